// Two-term expressions: prime size with a commutator, and a multilinear
// polynomial at size 4.
use matrix_waring::certificate::verify;
use matrix_waring::freealg::parse;
use matrix_waring::linalg::project_traceless;
use matrix_waring::sampling::{gaussian_matrix, sample_rng};
use matrix_waring::waring::{two_term_decompose, ExpressOptions};
use matrix_waring::Tolerances;

fn main() {
    let tol = Tolerances::default();
    for (text, n) in [("[X1,X2]", 3), ("X1*X2*X3 - X3*X2*X1", 4)] {
        let f = parse(text).unwrap();
        let a = project_traceless(&gaussian_matrix(&mut sample_rng(2, n as u64), n));
        let cert = two_term_decompose(&f, &a, &ExpressOptions::default(), &tol).unwrap();
        let report = verify(&cert).unwrap();
        println!("{text} at n={n}: A = f(x) - f(y), residual {:.2e}", report.residual);
    }
}
