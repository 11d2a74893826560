//! The certificate document and its verifier.
//!
//! A certificate is one JSON document: the polynomial text, every matrix in
//! the `{"n", "entries"}` format, the coefficients, the tolerances used, and
//! every similarity certificate. Floats are written with 17 significant
//! digits so values survive the round trip exactly.
//!
//! [`verify`] recomputes everything from the stored data using only
//! polynomial evaluation and matrix arithmetic.

use std::io;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::error::{Error, Result};
use crate::linalg::{frobenius, identity, CMatrix};
use crate::tolerances::Tolerances;
use crate::waring::WaringCertificate;

pub const FORMAT: &str = "matrix-waring-certificate/1";

struct ExactFloats<'a>(PrettyFormatter<'a>);

impl Formatter for ExactFloats<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.begin_array(writer)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_array(writer)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(writer, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_array_value(writer)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.begin_object(writer)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_object(writer)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(writer, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.begin_object_value(writer)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_object_value(writer)
    }
}

/// Pretty JSON with every float in `{:.16e}` form, newline terminated.
pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, ExactFloats(PrettyFormatter::with_indent(b"  ")));
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

#[derive(Serialize)]
struct DocumentRef<'a> {
    format: &'a str,
    #[serde(flatten)]
    certificate: &'a WaringCertificate,
}

#[derive(Deserialize)]
struct Document {
    format: String,
    #[serde(flatten)]
    certificate: WaringCertificate,
}

pub fn to_json(cert: &WaringCertificate) -> Result<String> {
    to_json_string(&DocumentRef { format: FORMAT, certificate: cert })
}

pub fn from_json(text: &str) -> Result<WaringCertificate> {
    let doc: Document = serde_json::from_str(text)?;
    if doc.format != FORMAT {
        return Err(Error::InvalidInput(format!("unknown certificate format {:?}", doc.format)));
    }
    Ok(doc.certificate)
}

/// Quantities recomputed by a successful verification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyReport {
    pub n: usize,
    pub terms: usize,
    pub residual: f64,
    pub bound: f64,
    pub steps: usize,
}

fn bounded(what: impl Into<String>, value: f64, bound: f64) -> Result<()> {
    if value <= bound {
        Ok(())
    } else {
        Err(Error::CertificateFailure { what: what.into(), value, bound })
    }
}

fn relative(m: &CMatrix) -> f64 {
    frobenius(m).max(1.0)
}

/// Verifies `cert` against its own stored tolerances.
/// Verifies with the recorded tolerances, never looser than the defaults.
pub fn verify(cert: &WaringCertificate) -> Result<VerifyReport> {
    verify_with(cert, &cert.tolerances.stricter(&Tolerances::default()))
}

/// Checks, in order: term count, sign discipline, every witness against
/// f(args), every similarity step (inverse and map residuals recomputed),
/// every term-linked step against its witness and f(tuple), and finally the
/// reconstruction of the target. The error names the first bound that fails.
pub fn verify_with(cert: &WaringCertificate, tol: &Tolerances) -> Result<VerifyReport> {
    let f = &cert.polynomial;
    let n = cert.target.nrows();
    if cert.target.ncols() != n || n == 0 {
        return Err(Error::InvalidStructure("target must be a nonempty square matrix".into()));
    }
    let terms = cert.mode.terms();
    if cert.tuples.len() != terms || cert.coefficients.len() != terms {
        return Err(Error::InvalidStructure(format!(
            "{} certificate needs {terms} tuples and coefficients, found {} and {}",
            cert.mode,
            cert.tuples.len(),
            cert.coefficients.len()
        )));
    }
    if let Some(signs) = cert.mode.signs() {
        for (k, (c, s)) in cert.coefficients.iter().zip(&signs).enumerate() {
            if c != s {
                return Err(Error::CertificateFailure {
                    what: format!("sign discipline: coefficient {} must be {}", k + 1, s.re),
                    value: (c - s).norm(),
                    bound: 0.0,
                });
            }
        }
    }
    let mut images = Vec::with_capacity(terms);
    for tuple in &cert.tuples {
        images.push(f.evaluate(tuple)?);
    }
    if let Some(bad) = images.iter().find(|m| m.nrows() != n) {
        return Err(Error::DimensionMismatch(format!("term image is {}x{}, target is {n}x{n}", bad.nrows(), bad.ncols())));
    }
    for (k, w) in cert.witnesses.iter().enumerate() {
        let image = f.evaluate(&w.args)?;
        if image.shape() != w.matrix.shape() {
            return Err(Error::DimensionMismatch(format!("witness {} has the wrong size", k + 1)));
        }
        bounded(format!("witness {} image", k + 1), frobenius(&(image - &w.matrix)), tol.end_tol * relative(&w.matrix))?;
    }
    for step in &cert.steps {
        let c = &step.certificate;
        let size = c.from.nrows();
        for m in [&c.t, &c.t_inv, &c.from, &c.to] {
            if m.nrows() != size || m.ncols() != size {
                return Err(Error::DimensionMismatch(format!("step {:?} mixes matrix sizes", step.label)));
            }
        }
        let inverse = frobenius(&(&c.t * &c.t_inv - identity(size)));
        bounded(format!("step {:?} inverse residual", step.label), inverse, tol.cert_tol)?;
        let kappa = frobenius(&c.t) * frobenius(&c.t_inv);
        let map = frobenius(&(&c.t * &c.from * &c.t_inv - &c.to));
        bounded(format!("step {:?} similarity residual", step.label), map, tol.cert_tol * kappa * frobenius(&c.from))?;
        if let Some(link) = step.link {
            let (Some(image), Some(w)) = (images.get(link.term), cert.witnesses.get(link.witness)) else {
                return Err(Error::InvalidStructure(format!("step {:?} links to a missing term or witness", step.label)));
            };
            if c.from.shape() != w.matrix.shape() || c.to.shape() != image.shape() {
                return Err(Error::DimensionMismatch(format!("step {:?} does not match its term", step.label)));
            }
            bounded(
                format!("step {:?} source witness", step.label),
                frobenius(&(&c.from - &w.matrix)),
                tol.cert_tol * relative(&w.matrix),
            )?;
            bounded(
                format!("step {:?} term image", step.label),
                frobenius(&(&c.to - image)),
                tol.end_tol * relative(&c.to),
            )?;
        }
    }
    let mut sum = cert.target.clone();
    for (image, c) in images.iter().zip(&cert.coefficients) {
        sum -= image * *c;
    }
    let residual = frobenius(&sum);
    let bound = tol.end_tol * relative(&cert.target);
    bounded("end residual", residual, bound)?;
    Ok(VerifyReport { n, terms, residual, bound, steps: cert.steps.len() })
}

/// Coefficients as plain pairs, for reports.
pub fn coefficient_pairs(cert: &WaringCertificate) -> Vec<[f64; 2]> {
    cert.coefficients.iter().map(|c: &Complex64| [c.re, c.im]).collect()
}
