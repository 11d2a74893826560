// Parse a few polynomials and classify them on small matrix sizes.
use matrix_waring::freealg::{classify, parse};

fn main() {
    for text in ["[X1,X2]", "[X1,X2]^2", "X1*X2*X3 - X3*X2*X1", "X1^2 + X2", "X1*X2 - X2*X1 - [X1,X2]"] {
        let f = parse(text).expect("valid polynomial");
        let verdicts: Vec<String> = (2..=4).map(|n| format!("n={n}: {}", classify(&f, n, 32, 1e-8, 0).verdict)).collect();
        println!("{:<28} multilinear={:<5} {}", f.to_string(), f.is_multilinear(), verdicts.join(", "));
    }
}
