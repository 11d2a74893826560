// Write a trace-zero matrix as B1 - B2 + B3 - B4 with every Bi similar to a
// fixed matrix with simple spectrum.
use matrix_waring::linalg::{c64, diag, eigenvalues, frobenius, project_traceless};
use matrix_waring::sampling::{gaussian_matrix, sample_rng};
use matrix_waring::waring::four_term_decompose;
use matrix_waring::Tolerances;

fn main() {
    let tol = Tolerances::default();
    let b = diag(&[c64(1.0, 0.0), c64(1.0, 0.0), c64(2.0, 0.0), c64(-3.0, 0.0), c64(5.0, 0.0)]);
    let a = project_traceless(&gaussian_matrix(&mut sample_rng(11, 0), 5));
    let cert = four_term_decompose(&b, &a, &tol).expect("decomposition");
    println!("target norm {:.3}, residual {:.2e}", frobenius(&a), cert.residual);
    for (k, t) in cert.tuples.iter().enumerate() {
        let mut eigs: Vec<f64> = eigenvalues(&t[0]).unwrap().iter().map(|z| z.re).collect();
        eigs.sort_by(f64::total_cmp);
        println!("term {} ({:+}): eigenvalues {:.6?}", k + 1, cert.coefficients[k].re, eigs);
    }
    for step in &cert.steps {
        println!("{:<20} inverse residual {:.1e}, map residual {:.1e}", step.label, step.certificate.residual_inverse, step.certificate.residual_map);
    }
}
