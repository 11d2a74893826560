// Serialize a certificate, read it back and verify it from the text alone;
// then show what a single flipped sign does.
use matrix_waring::certificate::{from_json, to_json, verify};
use matrix_waring::freealg::parse;
use matrix_waring::linalg::{c64, from_real_rows};
use matrix_waring::waring::{waring_express, ExpressOptions};
use matrix_waring::Tolerances;

fn main() {
    let f = parse("[X1,X2]").unwrap();
    let a = from_real_rows(&[&[1.0, 2.0, 0.0], &[0.0, 0.0, 1.0], &[3.0, 0.0, -1.0]]);
    let cert = waring_express(&f, &a, &ExpressOptions::default(), &Tolerances::default()).unwrap();
    let text = to_json(&cert).unwrap();
    println!("certificate: {} bytes", text.len());
    let back = from_json(&text).unwrap();
    let report = verify(&back).unwrap();
    println!("verified: {} steps, residual {:.2e}", report.steps, report.residual);
    let mut forged = back.clone();
    forged.coefficients[1] = c64(1.0, 0.0);
    println!("flipped sign: {}", verify(&forged).unwrap_err());
}
