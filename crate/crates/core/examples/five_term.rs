// A matrix with nonzero trace as c0 f(x) plus four signed values of f, and a
// polynomial whose values are all trace zero, where the search gives up.
use matrix_waring::certificate::verify;
use matrix_waring::freealg::parse;
use matrix_waring::linalg::identity;
use matrix_waring::waring::{five_term_express, ExpressOptions};
use matrix_waring::Tolerances;

fn main() {
    let tol = Tolerances::default();
    let opts = ExpressOptions { budget: 200, seed: 0 };
    let f = parse("X1^2 + X1").unwrap();
    let cert = five_term_express(&f, &identity(3), &opts, &tol).unwrap();
    println!("c0 = {:.6}, residual {:.2e}", cert.coefficients[0], verify(&cert).unwrap().residual);
    match five_term_express(&parse("[X1,X2]").unwrap(), &identity(3), &opts, &tol) {
        Ok(_) => println!("unexpected success"),
        Err(e) => println!("[X1,X2]: {e}"),
    }
}
