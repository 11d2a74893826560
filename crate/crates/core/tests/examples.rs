macro_rules! run_example {
    ($name:ident) => {
        mod $name {
            include!(concat!("../examples/", stringify!($name), ".rs"));

            #[test]
            fn runs() {
                main();
            }
        }
    };
}

run_example!(parse_and_classify);
run_example!(decoupling_unitary);
run_example!(four_term);
run_example!(waring_express);
run_example!(two_term);
run_example!(five_term);
run_example!(verify_certificate);
