// Express a random trace-zero 4x4 matrix through four values of X1^2 + X2.
use matrix_waring::certificate::verify;
use matrix_waring::freealg::parse;
use matrix_waring::linalg::project_traceless;
use matrix_waring::sampling::{gaussian_matrix, sample_rng};
use matrix_waring::waring::{waring_express, ExpressOptions};
use matrix_waring::Tolerances;

fn main() {
    let f = parse("X1^2 + X2").unwrap();
    let a = project_traceless(&gaussian_matrix(&mut sample_rng(5, 0), 4));
    let cert = waring_express(&f, &a, &ExpressOptions { budget: 1000, seed: 5 }, &Tolerances::default()).unwrap();
    let w = cert.witnesses.last().unwrap();
    println!("witness found at sample {}", w.sample);
    let report = verify(&cert).expect("certificate verifies");
    println!("{} terms, residual {:.2e} (bound {:.2e})", report.terms, report.residual, report.bound);
}
