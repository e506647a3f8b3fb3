//! Line-oriented Hamiltonian text format.
//!
//! ```text
//! # comment
//! c 3/2
//! t 1/2 1 2
//! t -1/2 2 3
//! v 7 9
//! ```
//!
//! `c` is the constant term, `t <rational> <i> <j> ...` one monomial with
//! strictly increasing 1-based indices, and `v` lists declared variables that
//! occur in no term (written only when there are any). Rationals are `p` or
//! `p/q` in lowest terms. The writer emits the constant first, then terms in
//! monomial order, then the `v` line, so `write(parse(write(p))) == write(p)`.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_traits::Zero;

use crate::poly::{Monomial, PolyError, Polynomial, Rational, SpinIndex};

fn parse_err(line: usize, message: impl Into<String>) -> PolyError {
    PolyError::Parse {
        line,
        message: message.into(),
    }
}

/// Parses `p` or `p/q`; the result is reduced to lowest terms.
pub fn parse_rational(tok: &str) -> Option<Rational> {
    if tok.contains('.') {
        return None;
    }
    let r = Rational::from_str(tok).ok()?;
    Some(r)
}

fn parse_index(tok: &str, line: usize) -> Result<SpinIndex, PolyError> {
    let i: SpinIndex = tok
        .parse()
        .map_err(|_| parse_err(line, format!("bad spin index {tok:?}")))?;
    if i == 0 {
        return Err(parse_err(line, "spin indices are 1-based"));
    }
    Ok(i)
}

/// Parses the text format, with `first_line` used for error positions.
pub(crate) fn parse_lines<'a, I>(lines: I, first_line: usize) -> Result<Polynomial, PolyError>
where
    I: IntoIterator<Item = &'a str>,
{
    let mut p = Polynomial::zero();
    let mut seen: BTreeSet<Monomial> = BTreeSet::new();
    for (offset, raw) in lines.into_iter().enumerate() {
        let line_no = first_line + offset;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut toks = line.split_whitespace();
        let tag = toks.next().unwrap_or_default();
        match tag {
            "c" | "t" => {
                let coef_tok = toks
                    .next()
                    .ok_or_else(|| parse_err(line_no, "missing coefficient"))?;
                let coef = parse_rational(coef_tok)
                    .ok_or_else(|| parse_err(line_no, format!("bad rational {coef_tok:?}")))?;
                let indices = toks
                    .map(|t| parse_index(t, line_no))
                    .collect::<Result<Vec<_>, _>>()?;
                if tag == "c" && !indices.is_empty() {
                    return Err(parse_err(line_no, "constant line takes no indices"));
                }
                if indices.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(parse_err(line_no, "indices must be strictly increasing"));
                }
                let m = Monomial::from_sorted_unchecked(indices);
                if !seen.insert(m.clone()) {
                    return Err(parse_err(line_no, format!("duplicate monomial {m}")));
                }
                p.add_term(m, coef);
            }
            "v" => {
                for t in toks {
                    p.declare(parse_index(t, line_no)?);
                }
            }
            other => return Err(parse_err(line_no, format!("unknown line tag {other:?}"))),
        }
    }
    Ok(p)
}

/// Writes the canonical text form.
pub fn write_polynomial(p: &Polynomial, out: &mut impl fmt::Write) -> fmt::Result {
    let c = p.constant_term();
    if !c.is_zero() {
        writeln!(out, "c {c}")?;
    }
    for (m, c) in p.terms().filter(|(m, _)| !m.is_empty()) {
        write!(out, "t {c}")?;
        for i in m.indices() {
            write!(out, " {i}")?;
        }
        writeln!(out)?;
    }
    let support = p.support();
    let bare: Vec<_> = p.variables().difference(&support).collect();
    if !bare.is_empty() {
        write!(out, "v")?;
        for i in bare {
            write!(out, " {i}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}

impl Polynomial {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        write_polynomial(self, &mut s).expect("writing to a String cannot fail");
        s
    }

    pub fn parse_text(text: &str) -> Result<Polynomial, PolyError> {
        parse_lines(text.lines(), 1)
    }
}

impl FromStr for Polynomial {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Polynomial::parse_text(s)
    }
}

/// Human-readable algebraic form, e.g. `-3/2 - 1/2 s1 s2`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            if m.is_empty() {
                let _ = write!(s, "{mag}");
            } else if mag == Rational::from_integer(1.into()) {
                let _ = write!(s, "{m}");
            } else {
                let _ = write!(s, "{mag} {m}");
            }
        }
        f.write_str(&s)
    }
}
