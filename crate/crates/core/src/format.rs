//! Text forms: ring descriptors, element literals and the matrix file format.
//!
//! Descriptors: `Z`, `Z/<n>`, `GF(<p>)[x]`, `Zser<k>`, `prod(<d>,<d>,...)`.
//! Literals: decimal integers, `[c0,c1,...]`, `{z0; c1, c2, ...}` (rational
//! `p/q` coefficients) and tuples `(<el>,<el>,...)`. A bare integer is also
//! accepted for polynomials and series and denotes a constant.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::complete::{CompletionCertificate, CompletionStep};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::reduce::ReductionCertificate;
use crate::ring::{Elem, Ring, RingKind, Value};

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
}

impl Cursor {
    fn new(src: &str, line: usize, column: usize) -> Self {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
            line,
            column,
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line, self.column + self.pos, msg)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(match self.peek() {
                Some(got) => self.err(format!("expected '{c}', found '{got}'")),
                None => self.err(format!("expected '{c}', found end of input")),
            })
        }
    }

    fn expect_str(&mut self, s: &str) -> Result<()> {
        s.chars().try_for_each(|c| self.expect(c))
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.err(format!("unexpected trailing '{c}'"))),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        self.eat('-');
        let digits = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return Err(self.err("expected an integer"));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        Ok(text.parse().expect("validated digits"))
    }

    fn rational(&mut self) -> Result<BigRational> {
        let num = self.integer()?;
        if !self.eat('/') {
            return Ok(BigRational::from_integer(num));
        }
        let at = self.pos;
        let den = self.integer()?;
        if den.is_zero() {
            self.pos = at;
            return Err(self.err("zero denominator"));
        }
        Ok(BigRational::new(num, den))
    }

    fn ring(&mut self) -> Result<Ring> {
        let at = self.pos;
        let wrap = |c: &Self, r: Result<Ring>| {
            r.map_err(|e| Error::parse(c.line, c.column + at, e.to_string()))
        };
        match self.peek() {
            Some('Z') => {
                self.pos += 1;
                if self.eat('/') {
                    let n = self.integer()?;
                    wrap(self, Ring::modular(n))
                } else if self.eat('s') {
                    self.expect_str("er")?;
                    let k = self.integer()?;
                    let k = usize::try_from(k).map_err(|_| self.err("bad truncation order"))?;
                    wrap(self, Ring::truncated_series(k))
                } else {
                    Ok(Ring::integers())
                }
            }
            Some('G') => {
                self.expect_str("GF(")?;
                let p = self.integer()?;
                self.expect_str(")[x]")?;
                wrap(self, Ring::poly_over_prime_field(p))
            }
            Some('p') => {
                self.expect_str("prod(")?;
                let mut factors = vec![self.ring()?];
                while self.eat(',') {
                    factors.push(self.ring()?);
                }
                self.expect(')')?;
                wrap(self, Ring::product(factors))
            }
            Some(c) => Err(self.err(format!("unknown ring descriptor starting at '{c}'"))),
            None => Err(self.err("empty ring descriptor")),
        }
    }

    fn element(&mut self, ring: &Ring) -> Result<Elem> {
        self.skip_ws();
        let at = self.pos;
        let wrap = |c: &Self, r: Result<Elem>| {
            r.map_err(|e| Error::parse(c.line, c.column + at, e.to_string()))
        };
        match ring.kind() {
            RingKind::Integers | RingKind::Modular(_) => Ok(ring.from_int(&self.integer()?)),
            RingKind::PolyOverPrimeField(_) => {
                if !self.eat('[') {
                    return Ok(ring.from_int(&self.integer()?));
                }
                let mut coeffs = Vec::new();
                self.skip_ws();
                if !self.eat(']') {
                    loop {
                        self.skip_ws();
                        coeffs.push(self.integer()?);
                        self.skip_ws();
                        if self.eat(']') {
                            break;
                        }
                        self.expect(',')?;
                    }
                }
                wrap(self, ring.poly(coeffs))
            }
            RingKind::TruncatedSeries(k) => {
                if !self.eat('{') {
                    return Ok(ring.from_int(&self.integer()?));
                }
                self.skip_ws();
                let constant = self.integer()?;
                self.skip_ws();
                let mut tail = Vec::new();
                if self.eat(';') {
                    loop {
                        self.skip_ws();
                        tail.push(self.rational()?);
                        self.skip_ws();
                        if !self.eat(',') {
                            break;
                        }
                    }
                }
                self.expect('}')?;
                if tail.len() + 1 > *k {
                    return Err(Error::parse(
                        self.line,
                        self.column + at,
                        format!("series has more than {k} coefficients"),
                    ));
                }
                wrap(self, ring.series(constant, tail))
            }
            RingKind::Product(factors) => {
                self.expect('(')?;
                let mut parts = Vec::with_capacity(factors.len());
                for (i, f) in factors.iter().enumerate() {
                    if i > 0 {
                        self.skip_ws();
                        self.expect(',')?;
                    }
                    parts.push(self.element(f)?);
                }
                self.skip_ws();
                self.expect(')')?;
                wrap(self, ring.tuple(parts))
            }
        }
    }
}

pub fn parse_ring(s: &str) -> Result<Ring> {
    let mut c = Cursor::new(s.trim(), 1, 1);
    let r = c.ring()?;
    c.finish()?;
    Ok(r)
}

pub fn parse_element(ring: &Ring, s: &str) -> Result<Elem> {
    parse_element_at(ring, s, 1, 1)
}

fn parse_element_at(ring: &Ring, s: &str, line: usize, column: usize) -> Result<Elem> {
    let mut c = Cursor::new(s, line, column);
    let e = c.element(ring)?;
    c.skip_ws();
    c.finish()?;
    Ok(e)
}

/// Comma-separated literals at bracket depth 0, e.g. a row vector.
pub fn parse_element_list(ring: &Ring, s: &str) -> Result<Vec<Elem>> {
    split_top_level(s, |c| c == ',')
        .into_iter()
        .map(|(col, tok)| parse_element_at(ring, tok, 1, col))
        .collect()
}

fn rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Canonical literal of an element.
pub fn element(e: &Elem) -> String {
    match e.value() {
        Value::Int(v) | Value::Residue(v) => v.to_string(),
        Value::Poly(c) => {
            format!(
                "[{}]",
                c.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            )
        }
        Value::Series { constant, tail } => {
            if tail.is_empty() {
                format!("{{{constant}}}")
            } else {
                format!(
                    "{{{constant}; {}}}",
                    tail.iter().map(rational).collect::<Vec<_>>().join(", ")
                )
            }
        }
        Value::Tuple(parts) => format!(
            "({})",
            parts.iter().map(element).collect::<Vec<_>>().join(",")
        ),
    }
}

/// Splits on separator characters outside brackets; returns 1-based columns.
fn split_top_level(s: &str, is_sep: impl Fn(char) -> bool) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start: Option<usize> = None;
    let mut col = 0;
    let mut start_col = 0;
    for (i, ch) in s.char_indices() {
        col += 1;
        if depth == 0 && is_sep(ch) {
            if let Some(st) = start.take() {
                out.push((start_col, &s[st..i]));
            } else if !ch.is_whitespace() {
                out.push((col, ""));
            }
            continue;
        }
        match ch {
            '[' | '{' | '(' => depth += 1,
            ']' | '}' | ')' => depth -= 1,
            _ => {}
        }
        if start.is_none() && !(depth == 0 && ch.is_whitespace()) {
            start = Some(i);
            start_col = col;
        }
    }
    if let Some(st) = start {
        out.push((start_col, &s[st..]));
    }
    out.into_iter().map(|(c, t)| (c, t.trim_end())).collect()
}

/// Parses the matrix file format: `ring: <descriptor>`, `shape: <m> <n>`,
/// then `m` lines of `n` whitespace-separated literals.
pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (ln, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, 1, "empty matrix file"))?;
    let desc = header
        .strip_prefix("ring: ")
        .ok_or_else(|| Error::parse(ln, 1, "expected 'ring: <descriptor>'"))?;
    let mut c = Cursor::new(desc, ln, 7);
    let ring = c.ring()?;
    c.finish()?;

    let (ln, shape) = lines
        .next()
        .ok_or_else(|| Error::parse(2, 1, "missing shape line"))?;
    let dims = shape
        .strip_prefix("shape: ")
        .ok_or_else(|| Error::parse(ln, 1, "expected 'shape: <m> <n>'"))?;
    let dims: Vec<&str> = dims.split(' ').collect();
    let parse_dim = |i: usize| -> Result<usize> {
        dims.get(i)
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::parse(ln, 8, "shape needs two positive integers"))
    };
    if dims.len() != 2 {
        return Err(Error::parse(ln, 8, "shape needs two positive integers"));
    }
    let (m, n) = (parse_dim(0)?, parse_dim(1)?);

    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| Error::parse(3 + i, 1, format!("expected {m} rows, found {i}")))?;
        let tokens = split_top_level(line, char::is_whitespace);
        if tokens.len() != n {
            return Err(Error::parse(
                ln,
                1,
                format!("expected {n} entries, found {}", tokens.len()),
            ));
        }
        rows.push(
            tokens
                .into_iter()
                .map(|(col, tok)| parse_element_at(&ring, tok, ln, col))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    if let Some((ln, extra)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        let _ = extra;
        return Err(Error::parse(ln, 1, "unexpected content after the last row"));
    }
    Matrix::from_rows(ring, rows)
}

pub fn print_matrix(m: &Matrix) -> String {
    let mut out = format!("ring: {}\nshape: {} {}\n", m.ring(), m.rows(), m.cols());
    for i in 0..m.rows() {
        out.push_str(&m.row(i).iter().map(element).collect::<Vec<_>>().join(" "));
        out.push('\n');
    }
    out
}

/// Row-major literal form used inside certificates.
pub fn matrix_rows(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(element).collect())
        .collect()
}

pub fn matrix_from_rows(ring: &Ring, rows: &[Vec<String>]) -> Result<Matrix> {
    let rows = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(|(j, s)| parse_element_at(ring, s, i + 1, j + 1))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(ring.clone(), rows)
}

/// Serialized reduction certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReductionDoc {
    pub kind: String,
    pub ring: String,
    #[serde(rename = "P")]
    pub p: Vec<Vec<String>>,
    #[serde(rename = "D")]
    pub d: Vec<Vec<String>>,
    #[serde(rename = "Q")]
    pub q: Vec<Vec<String>>,
    #[serde(rename = "detP")]
    pub det_p: String,
    #[serde(rename = "detQ")]
    pub det_q: String,
}

/// Serialized completion certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompletionDoc {
    pub kind: String,
    pub ring: String,
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
    pub first_row: Vec<String>,
    pub det_target: String,
    pub det_value: String,
    pub steps: Vec<CompletionStep>,
}

pub const REDUCTION_KIND: &str = "reduction";
pub const COMPLETION_KIND: &str = "completion";

pub fn reduction_doc(cert: &ReductionCertificate) -> ReductionDoc {
    ReductionDoc {
        kind: REDUCTION_KIND.into(),
        ring: cert.d.ring().to_string(),
        p: matrix_rows(&cert.p),
        d: matrix_rows(&cert.d),
        q: matrix_rows(&cert.q),
        det_p: element(&cert.det_p),
        det_q: element(&cert.det_q),
    }
}

pub fn reduction_from_doc(doc: &ReductionDoc) -> Result<ReductionCertificate> {
    let ring = parse_ring(&doc.ring)?;
    Ok(ReductionCertificate {
        p: matrix_from_rows(&ring, &doc.p)?,
        d: matrix_from_rows(&ring, &doc.d)?,
        q: matrix_from_rows(&ring, &doc.q)?,
        det_p: parse_element(&ring, &doc.det_p)?,
        det_q: parse_element(&ring, &doc.det_q)?,
    })
}

pub fn completion_doc(cert: &CompletionCertificate) -> CompletionDoc {
    CompletionDoc {
        kind: COMPLETION_KIND.into(),
        ring: cert.matrix.ring().to_string(),
        a: matrix_rows(&cert.matrix),
        first_row: cert.first_row.iter().map(element).collect(),
        det_target: element(&cert.det_target),
        det_value: element(&cert.det_value),
        steps: cert.steps.clone(),
    }
}

pub fn completion_from_doc(doc: &CompletionDoc) -> Result<CompletionCertificate> {
    let ring = parse_ring(&doc.ring)?;
    Ok(CompletionCertificate {
        matrix: matrix_from_rows(&ring, &doc.a)?,
        first_row: doc
            .first_row
            .iter()
            .map(|s| parse_element(&ring, s))
            .collect::<Result<_>>()?,
        det_target: parse_element(&ring, &doc.det_target)?,
        det_value: parse_element(&ring, &doc.det_value)?,
        steps: doc.steps.clone(),
    })
}

/// Either kind of certificate, told apart by its `kind` field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Reduction(ReductionCertificate),
    Completion(CompletionCertificate),
}

fn json_error(e: serde_json::Error) -> Error {
    Error::parse(e.line(), e.column(), e.to_string())
}

pub fn parse_certificate(text: &str) -> Result<Certificate> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(json_error)?;
    match value.get("kind").and_then(|k| k.as_str()) {
        Some(REDUCTION_KIND) => {
            let doc: ReductionDoc = serde_json::from_value(value).map_err(json_error)?;
            Ok(Certificate::Reduction(reduction_from_doc(&doc)?))
        }
        Some(COMPLETION_KIND) => {
            let doc: CompletionDoc = serde_json::from_value(value).map_err(json_error)?;
            Ok(Certificate::Completion(completion_from_doc(&doc)?))
        }
        _ => Err(Error::parse(
            1,
            1,
            "certificate needs kind \"reduction\" or \"completion\"",
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn descriptors_round_trip() {
        for d in [
            "Z",
            "Z/12",
            "GF(5)[x]",
            "Zser4",
            "prod(Z,Z/6)",
            "prod(GF(2)[x],prod(Z/2,Z/3),Zser2)",
        ] {
            assert_eq!(parse_ring(d).unwrap().to_string(), d);
        }
    }

    #[test]
    fn descriptor_errors_carry_positions() {
        let e = parse_ring("Z/1").unwrap_err();
        assert!(e.is_parse());
        assert!(matches!(
            parse_ring("GF(4)[x]").unwrap_err(),
            Error::Parse { column: 1, .. }
        ));
        assert!(matches!(
            parse_ring("prod(Z;Z)").unwrap_err(),
            Error::Parse { column: 7, .. }
        ));
        assert!(parse_ring("Q").is_err());
        assert!(parse_ring("Z/12x").is_err());
        assert!(parse_ring("prod(Z)").is_err());
    }

    #[test]
    fn element_literals() {
        let r = parse_ring("prod(Z/12,GF(5)[x],Zser3)").unwrap();
        let e = parse_element(&r, "(14, [1, 7, 0], {3; 1/2, -4/2})").unwrap();
        assert_eq!(element(&e), "(2,[1,2],{3; 1/2, -2})");
        assert_eq!(parse_element(&r, &element(&e)).unwrap(), e);
        let zs = Ring::truncated_series(3).unwrap();
        assert_eq!(element(&parse_element(&zs, "{5}").unwrap()), "{5; 0, 0}");
        assert_eq!(element(&parse_element(&zs, "7").unwrap()), "{7; 0, 0}");
        assert!(parse_element(&zs, "{1; 1, 2, 3}").is_err());
        assert!(parse_element(&zs, "{1; 1/0}").is_err());
        let gf = Ring::poly_over_prime_field(2).unwrap();
        assert_eq!(element(&gf.zero()), "[]");
        assert!(matches!(
            parse_element(&gf, "[1,,1]").unwrap_err(),
            Error::Parse { column: 4, .. }
        ));
        assert!(parse_element(&Ring::integers(), "1 2").is_err());
    }

    #[test]
    fn element_lists() {
        let r = Ring::product(vec![Ring::integers(), Ring::integers()]).unwrap();
        let v = parse_element_list(&r, "(1,2), (3,4)").unwrap();
        assert_eq!(v.len(), 2);
        assert!(parse_element_list(&Ring::integers(), "1,,2").is_err());
    }

    #[test]
    fn matrix_files() {
        let text = "ring: Zser2\nshape: 2 2\n{1; 1/2} 0\n3 {4; -1}\n";
        let m = parse_matrix(text).unwrap();
        assert_eq!(
            print_matrix(&m),
            "ring: Zser2\nshape: 2 2\n{1; 1/2} {0; 0}\n{3; 0} {4; -1}\n"
        );
        assert_eq!(parse_matrix(&print_matrix(&m)).unwrap(), m);

        let bad = parse_matrix("ring: Z\nshape: 2 2\n1 2\n3 x\n").unwrap_err();
        assert!(
            matches!(
                bad,
                Error::Parse {
                    line: 4,
                    column: 3,
                    ..
                }
            ),
            "{bad:?}"
        );
        assert!(matches!(
            parse_matrix("ring: Z\nshape: 1 2\n1\n").unwrap_err(),
            Error::Parse { line: 3, .. }
        ));
        assert!(parse_matrix("ring: Z\nshape: 1 1\n1\n2\n").is_err());
        assert!(parse_matrix("ring: Z\nshape: 0 1\n").is_err());
        assert!(parse_matrix("ring:Z\nshape: 1 1\n1\n").is_err());
    }

    #[test]
    fn certificates_round_trip() {
        let r = Ring::modular(12).unwrap();
        let a = Matrix::from_ints(&r, &[&[8, 6], &[3, 9]]).unwrap();
        let cert = crate::reduce::diagonal_reduce(&a).unwrap();
        let text = serde_json::to_string_pretty(&reduction_doc(&cert)).unwrap();
        assert!(text.contains("\"detP\""));
        assert_eq!(
            parse_certificate(&text).unwrap(),
            Certificate::Reduction(cert)
        );

        let z = Ring::integers();
        let cert = crate::complete::complete_row(&[z.int(3), z.int(5)], &z.one()).unwrap();
        let text = serde_json::to_string(&completion_doc(&cert)).unwrap();
        assert_eq!(
            parse_certificate(&text).unwrap(),
            Certificate::Completion(cert)
        );

        assert!(parse_certificate("{\"kind\": \"other\"}")
            .unwrap_err()
            .is_parse());
        assert!(parse_certificate("{ nope").unwrap_err().is_parse());
    }

    proptest! {
        #[test]
        fn integer_matrices_round_trip(entries in proptest::collection::vec(-1000i64..1000, 6)) {
            let rows: Vec<&[i64]> = entries.chunks(3).collect();
            let m = Matrix::from_ints(&Ring::integers(), &rows).unwrap();
            prop_assert_eq!(parse_matrix(&print_matrix(&m)).unwrap(), m.clone());
            prop_assert_eq!(matrix_from_rows(m.ring(), &matrix_rows(&m)).unwrap(), m);
        }
    }
}
