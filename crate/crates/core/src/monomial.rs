//! Monomials and monomial ideals in k[X_1, …, X_d].
//!
//! An ideal is stored as its unique antichain of minimal generators, sorted
//! in the canonical graded order (ascending total degree, ties broken
//! lexicographically with X_1 largest). Two ideals are equal exactly when
//! their generator lists are identical.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::IdealError;

type Exps = SmallVec<[u32; 4]>;

/// An exponent vector in ℕ^d.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Exps);

impl Monomial {
    pub fn new(exps: impl Into<Vec<u32>>) -> Self {
        Monomial(SmallVec::from_vec(exps.into()))
    }

    pub fn from_slice(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn one(d: usize) -> Self {
        Monomial(SmallVec::from_elem(0, d))
    }

    /// `X_axis^power`.
    pub fn pure_power(d: usize, axis: usize, power: u32) -> Self {
        let mut m = Self::one(d);
        m.0[axis] = power;
        m
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// `Some(axis)` if this is `X_axis^k` with `k ≥ 1`.
    pub fn pure_axis(&self) -> Option<usize> {
        let mut support = self.0.iter().enumerate().filter(|(_, &e)| e > 0);
        match (support.next(), support.next()) {
            (Some((i, _)), None) => Some(i),
            _ => None,
        }
    }

    /// `self | other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial, IdealError> {
        let mut out = Exps::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            out.push(a.checked_add(*b).ok_or(IdealError::Overflow)?);
        }
        Ok(Monomial(out))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// Generator of the principal colon `(self : other)`, i.e. `max(self − other, 0)`.
    pub fn saturating_div(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a.saturating_sub(*b))
                .collect(),
        )
    }

    /// Canonical order: ascending degree, then lexicographically descending.
    pub fn canonical_cmp(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> MonomialDisplay<'a> {
        MonomialDisplay { mono: self, names }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_variable_names(self.dim());
        let shown = self.display_with(&names).to_string();
        f.write_str(&shown)
    }
}

pub struct MonomialDisplay<'a> {
    mono: &'a Monomial,
    names: &'a [String],
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.mono.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.names[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// `X, Y, Z, W` for d ≤ 4, otherwise `X1 … Xd`.
pub fn default_variable_names(d: usize) -> Vec<String> {
    if d <= 4 {
        ["X", "Y", "Z", "W"][..d]
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else {
        (1..=d).map(|i| format!("X{i}")).collect()
    }
}

/// A monomial ideal, kept as its canonical minimal generating set.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "IdealRepr", into = "IdealRepr")]
pub struct MonomialIdeal {
    dim: usize,
    generators: Vec<Monomial>,
}

/// The ideal generated by `gens`, reduced to its minimal antichain.
pub fn minimalize(gens: Vec<Monomial>, d: usize) -> Result<MonomialIdeal, IdealError> {
    for g in &gens {
        if g.dim() != d {
            return Err(IdealError::ArityMismatch {
                expected: d,
                found: g.dim(),
            });
        }
    }
    Ok(MonomialIdeal::minimalize_unchecked(gens, d))
}

impl MonomialIdeal {
    pub fn new(d: usize, gens: Vec<Monomial>) -> Result<Self, IdealError> {
        minimalize(gens, d)
    }

    pub fn from_exponents(d: usize, gens: &[Vec<u32>]) -> Result<Self, IdealError> {
        minimalize(gens.iter().map(|g| Monomial::from_slice(g)).collect(), d)
    }

    pub(crate) fn minimalize_unchecked(mut gens: Vec<Monomial>, d: usize) -> Self {
        gens.sort_unstable_by(|a, b| a.canonical_cmp(b));
        gens.dedup();
        let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
        for g in gens {
            // kept is sorted by degree, so only lower-degree entries can divide g
            let deg = g.degree();
            let divided = kept
                .iter()
                .take_while(|k| k.degree() < deg)
                .any(|k| k.divides(&g));
            if !divided {
                kept.push(g);
            }
        }
        MonomialIdeal {
            dim: d,
            generators: kept,
        }
    }

    pub fn zero(d: usize) -> Self {
        MonomialIdeal {
            dim: d,
            generators: Vec::new(),
        }
    }

    pub fn unit(d: usize) -> Self {
        MonomialIdeal {
            dim: d,
            generators: vec![Monomial::one(d)],
        }
    }

    /// The maximal ideal `(X_1, …, X_d)`.
    pub fn maximal(d: usize) -> Self {
        Self::minimalize_unchecked((0..d).map(|i| Monomial::pure_power(d, i, 1)).collect(), d)
    }

    /// `(X_1^k, …, X_d^k)`.
    pub fn diagonal(d: usize, k: u32) -> Self {
        Self::minimalize_unchecked((0..d).map(|i| Monomial::pure_power(d, i, k)).collect(), d)
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_one()
    }

    fn check_dim(&self, other: &MonomialIdeal) -> Result<(), IdealError> {
        if self.dim != other.dim {
            return Err(IdealError::ArityMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn contains_monomial(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    /// `B ⊆ self`.
    pub fn contains(&self, other: &MonomialIdeal) -> Result<bool, IdealError> {
        self.check_dim(other)?;
        Ok(other.generators.iter().all(|g| self.contains_monomial(g)))
    }

    pub fn equals(&self, other: &MonomialIdeal) -> Result<bool, IdealError> {
        self.check_dim(other)?;
        Ok(self.generators == other.generators)
    }

    /// Exponent of the minimal pure power of each variable, if all exist.
    pub fn pure_power_exponents(&self) -> Result<Vec<u32>, IdealError> {
        let mut out = vec![u32::MAX; self.dim];
        for g in &self.generators {
            if g.is_one() {
                return Ok(vec![0; self.dim]);
            }
            if let Some(axis) = g.pure_axis() {
                out[axis] = out[axis].min(g.exponents()[axis]);
            }
        }
        match out.iter().position(|&e| e == u32::MAX) {
            Some(axis) => Err(IdealError::NotMPrimary { axis }),
            None => Ok(out),
        }
    }

    pub fn is_m_primary(&self) -> bool {
        self.pure_power_exponents().is_ok()
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, IdealError> {
        self.check_dim(other)?;
        if self.is_unit() {
            return Ok(other.clone());
        }
        if other.is_unit() {
            return Ok(self.clone());
        }
        let mut gens = Vec::with_capacity(self.len() * other.len());
        for a in &self.generators {
            for b in &other.generators {
                gens.push(a.mul(b)?);
            }
        }
        Ok(Self::minimalize_unchecked(gens, self.dim))
    }

    /// `self^n`, with `self^0` the unit ideal.
    pub fn power(&self, n: u32) -> Result<MonomialIdeal, IdealError> {
        let mut acc = MonomialIdeal::unit(self.dim);
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.product(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.product(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, IdealError> {
        self.check_dim(other)?;
        let gens = self
            .generators
            .iter()
            .chain(other.generators.iter())
            .cloned()
            .collect();
        Ok(Self::minimalize_unchecked(gens, self.dim))
    }

    pub fn intersection(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, IdealError> {
        self.check_dim(other)?;
        let mut gens = Vec::with_capacity(self.len() * other.len());
        for a in &self.generators {
            for b in &other.generators {
                gens.push(a.lcm(b));
            }
        }
        Ok(Self::minimalize_unchecked(gens, self.dim))
    }

    /// `(self : x^b)`.
    pub fn colon_monomial(&self, b: &Monomial) -> Result<MonomialIdeal, IdealError> {
        if b.dim() != self.dim {
            return Err(IdealError::ArityMismatch {
                expected: self.dim,
                found: b.dim(),
            });
        }
        let gens = self
            .generators
            .iter()
            .map(|a| a.saturating_div(b))
            .collect();
        Ok(Self::minimalize_unchecked(gens, self.dim))
    }

    /// `(self : other) = ∩_b (self : x^b)` over the generators of `other`.
    pub fn colon(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, IdealError> {
        self.check_dim(other)?;
        if other.is_zero() {
            return Err(IdealError::ColonByZero);
        }
        let mut acc: Option<MonomialIdeal> = None;
        for b in &other.generators {
            let part = self.colon_monomial(b)?;
            acc = Some(match acc {
                None => part,
                Some(prev) => prev.intersection(&part)?,
            });
        }
        Ok(acc.expect("nonzero ideal has a generator"))
    }

    /// `(y_1, …, y_t)·self`.
    pub fn times_monomials(&self, ys: &[Monomial]) -> Result<MonomialIdeal, IdealError> {
        let mut gens = Vec::with_capacity(self.len() * ys.len());
        for y in ys {
            if y.dim() != self.dim {
                return Err(IdealError::ArityMismatch {
                    expected: self.dim,
                    found: y.dim(),
                });
            }
            for g in &self.generators {
                gens.push(g.mul(y)?);
            }
        }
        Ok(Self::minimalize_unchecked(gens, self.dim))
    }

    /// Parses `"X^2*Y + Y^3"` with the default variable names for `d`.
    pub fn parse(text: &str, d: usize) -> Result<MonomialIdeal, IdealError> {
        Self::parse_with(text, &default_variable_names(d))
    }

    /// Parses with `d` inferred from the highest variable mentioned.
    pub fn parse_infer(text: &str) -> Result<MonomialIdeal, IdealError> {
        let terms = parse_terms(text, &[])?;
        let d = terms
            .iter()
            .flat_map(|t| t.iter().map(|(v, _)| v + 1))
            .max()
            .unwrap_or(1);
        build_from_terms(terms, d)
    }

    /// Parses using explicit variable names. `X1 … Xd` are always accepted.
    pub fn parse_with(text: &str, names: &[String]) -> Result<MonomialIdeal, IdealError> {
        let terms = parse_terms(text, names)?;
        let d = names.len();
        if let Some(v) = terms
            .iter()
            .flat_map(|t| t.iter().map(|(v, _)| *v))
            .find(|&v| v >= d)
        {
            return Err(IdealError::Parse {
                column: 1,
                message: format!(
                    "variable index {} exceeds the {d} declared variables",
                    v + 1
                ),
            });
        }
        build_from_terms(terms, d)
    }

    /// Generators joined by `" + "`, in the parseable form.
    pub fn to_expr(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.generators
            .iter()
            .map(|g| g.display_with(names).to_string())
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn exponent_lists(&self) -> Vec<Vec<u32>> {
        self.generators
            .iter()
            .map(|g| g.exponents().to_vec())
            .collect()
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_variable_names(self.dim);
        let parts: Vec<String> = self
            .generators
            .iter()
            .map(|g| g.display_with(&names).to_string())
            .collect();
        if parts.is_empty() {
            write!(f, "(0)")
        } else {
            write!(f, "({})", parts.join(", "))
        }
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Serialized form: exponent arrays. Deserializing re-minimalizes.
#[derive(Serialize, Deserialize)]
struct IdealRepr {
    dim: usize,
    generators: Vec<Vec<u32>>,
}

impl From<MonomialIdeal> for IdealRepr {
    fn from(i: MonomialIdeal) -> Self {
        IdealRepr {
            dim: i.dim,
            generators: i.exponent_lists(),
        }
    }
}

impl TryFrom<IdealRepr> for MonomialIdeal {
    type Error = IdealError;
    fn try_from(r: IdealRepr) -> Result<Self, IdealError> {
        MonomialIdeal::from_exponents(r.dim, &r.generators)
    }
}

type Term = Vec<(usize, u32)>;

fn build_from_terms(terms: Vec<Term>, d: usize) -> Result<MonomialIdeal, IdealError> {
    let mut gens = Vec::with_capacity(terms.len());
    for t in terms {
        let mut exps = vec![0u32; d];
        for (v, e) in t {
            exps[v] = exps[v].checked_add(e).ok_or(IdealError::Overflow)?;
        }
        gens.push(Monomial::new(exps));
    }
    Ok(MonomialIdeal::minimalize_unchecked(gens, d))
}

/// Tokenizes a sum of monomials. A lone `0` denotes the zero ideal.
fn parse_terms(text: &str, names: &[String]) -> Result<Vec<Term>, IdealError> {
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0usize;
    let err = |pos: usize, msg: String| IdealError::Parse {
        column: pos + 1,
        message: msg,
    };
    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    let read_number = |pos: &mut usize| -> Option<u32> {
        let start = *pos;
        while *pos < chars.len() && chars[*pos].is_ascii_digit() {
            *pos += 1;
        }
        if start == *pos {
            return None;
        }
        chars[start..*pos].iter().collect::<String>().parse().ok()
    };

    skip_ws(&mut pos);
    if pos < chars.len() && chars[pos] == '0' {
        let mut p = pos + 1;
        skip_ws(&mut p);
        if p == chars.len() {
            return Ok(Vec::new());
        }
    }

    let mut terms = Vec::new();
    loop {
        let mut term: Term = Vec::new();
        loop {
            skip_ws(&mut pos);
            if pos >= chars.len() {
                return Err(err(pos, "expected a monomial".into()));
            }
            let c = chars[pos];
            if c.is_ascii_digit() {
                let start = pos;
                match read_number(&mut pos) {
                    Some(1) => {}
                    _ => return Err(err(start, "only the coefficient 1 is allowed".into())),
                }
            } else if c.is_ascii_alphabetic() {
                let start = pos;
                while pos < chars.len() && (chars[pos].is_ascii_alphanumeric() || chars[pos] == '_')
                {
                    pos += 1;
                }
                let ident: String = chars[start..pos].iter().collect();
                let var = resolve_variable(&ident, names)
                    .ok_or_else(|| err(start, format!("unknown variable {ident:?}")))?;
                skip_ws(&mut pos);
                let mut exp = 1u32;
                if pos < chars.len() && chars[pos] == '^' {
                    pos += 1;
                    skip_ws(&mut pos);
                    let at = pos;
                    exp = read_number(&mut pos)
                        .ok_or_else(|| err(at, "expected an exponent".into()))?;
                }
                term.push((var, exp));
            } else {
                return Err(err(pos, format!("unexpected character {c:?}")));
            }
            skip_ws(&mut pos);
            if pos < chars.len() && chars[pos] == '*' {
                pos += 1;
                continue;
            }
            break;
        }
        terms.push(term);
        skip_ws(&mut pos);
        if pos >= chars.len() {
            break;
        }
        if chars[pos] == '+' {
            pos += 1;
            continue;
        }
        return Err(err(
            pos,
            format!("expected '+' or '*', found {:?}", chars[pos]),
        ));
    }
    Ok(terms)
}

fn resolve_variable(ident: &str, names: &[String]) -> Option<usize> {
    if let Some(i) = names.iter().position(|n| n == ident) {
        return Some(i);
    }
    if names.is_empty() {
        if let Some(i) = ["X", "Y", "Z", "W"].iter().position(|n| *n == ident) {
            return Some(i);
        }
    }
    let digits = ident.strip_prefix('X')?;
    match digits.parse::<usize>() {
        Ok(k) if k >= 1 && !digits.starts_with('0') => Some(k - 1),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(d: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(d, gens.iter().map(|g| Monomial::from_slice(g)).collect()).unwrap()
    }

    /// Independent oracle: keep g unless some other listed exponent divides it.
    fn pairwise_minimal(gens: &[&[u32]]) -> Vec<Vec<u32>> {
        let mut out: Vec<Vec<u32>> = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            let dominated = gens.iter().enumerate().any(|(j, h)| {
                j != i && h.iter().zip(g.iter()).all(|(a, b)| a <= b) && (h != g || j < i)
            });
            if !dominated {
                out.push(g.to_vec());
            }
        }
        out.sort();
        out
    }

    #[test]
    fn minimalize_examples() {
        assert_eq!(ideal(2, &[&[2, 0], &[1, 0]]), ideal(2, &[&[1, 0]]));
        assert_eq!(ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]).len(), 3);

        let gens: &[&[u32]] = &[&[3, 0], &[0, 3], &[2, 2], &[1, 2]];
        let mut got = ideal(2, gens).exponent_lists();
        got.sort();
        assert_eq!(got, pairwise_minimal(gens));
        assert_eq!(got, vec![vec![0, 3], vec![1, 2], vec![3, 0]]);
    }

    #[test]
    fn minimalize_rejects_arity_mismatch() {
        let r = minimalize(vec![Monomial::new(vec![1, 0]), Monomial::new(vec![1])], 2);
        assert_eq!(
            r,
            Err(IdealError::ArityMismatch {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn canonical_order_is_graded() {
        let i = MonomialIdeal::parse("Y^3 + X*Y + X^2", 2).unwrap();
        assert_eq!(i.to_expr(&default_variable_names(2)), "X^2 + X*Y + Y^3");
    }

    #[test]
    fn products() {
        let m = MonomialIdeal::maximal(2);
        assert_eq!(
            m.product(&m).unwrap(),
            ideal(2, &[&[2, 0], &[1, 1], &[0, 2]])
        );
        let i = m.power(2).unwrap();
        let j = MonomialIdeal::diagonal(2, 2);
        assert_eq!(i.product(&j).unwrap(), m.power(4).unwrap());
        assert_eq!(i.product(&MonomialIdeal::unit(2)).unwrap(), i);
        assert_eq!(m.power(0).unwrap(), MonomialIdeal::unit(2));
        assert_eq!(m.power(5).unwrap().len(), 6);
    }

    #[test]
    fn colon_examples() {
        let a = MonomialIdeal::parse("X^2 + Y^2", 2).unwrap();
        let x = MonomialIdeal::parse("X", 2).unwrap();
        assert_eq!(
            a.colon(&x).unwrap(),
            MonomialIdeal::parse("X + Y^2", 2).unwrap()
        );
        assert_eq!(a.colon(&MonomialIdeal::unit(2)).unwrap(), a);

        let b = MonomialIdeal::parse("X^2 + X*Y + Y^3", 2).unwrap();
        let m = MonomialIdeal::maximal(2);
        assert_eq!(
            b.colon(&m).unwrap(),
            MonomialIdeal::parse("X + Y^2", 2).unwrap()
        );
        assert_eq!(
            a.colon(&MonomialIdeal::zero(2)),
            Err(IdealError::ColonByZero)
        );
    }

    #[test]
    fn containment() {
        let m = MonomialIdeal::maximal(2);
        assert!(m.contains(&m.power(2).unwrap()).unwrap());
        let a = MonomialIdeal::parse("X^2 + Y^2", 2).unwrap();
        let xy = MonomialIdeal::parse("X*Y", 2).unwrap();
        assert!(!a.contains(&xy).unwrap());

        // (X^4, Y^4)·I·J = (I·J)^2 with I = m^2, J = (X^2, Y^2)
        let i = m.power(2).unwrap();
        let ij = i.product(&a).unwrap();
        let lhs = ij
            .times_monomials(&[Monomial::new(vec![4, 0]), Monomial::new(vec![0, 4])])
            .unwrap();
        assert!(lhs.equals(&ij.power(2).unwrap()).unwrap());
        assert!(m.contains(&MonomialIdeal::maximal(3)).is_err());
    }

    #[test]
    fn m_primary_detection() {
        assert!(MonomialIdeal::parse("X^2 + X*Y + Y^3", 2)
            .unwrap()
            .is_m_primary());
        assert!(!MonomialIdeal::parse("X^2 + X*Y", 2).unwrap().is_m_primary());
        assert!(MonomialIdeal::unit(3).is_m_primary());
        assert!(!MonomialIdeal::zero(2).is_m_primary());
    }

    #[test]
    fn parsing() {
        let i = MonomialIdeal::parse_infer("X^2+X*Y+Y^3").unwrap();
        assert_eq!(i.ambient_dim(), 2);
        assert_eq!(i, ideal(2, &[&[2, 0], &[1, 1], &[0, 3]]));
        let j = MonomialIdeal::parse("X1^2*X3 + X2", 3).unwrap();
        assert_eq!(j, ideal(3, &[&[2, 0, 1], &[0, 1, 0]]));
        assert!(MonomialIdeal::parse("0", 2).unwrap().is_zero());
        assert!(MonomialIdeal::parse("1", 2).unwrap().is_unit());
        match MonomialIdeal::parse("X^2 + Q", 2) {
            Err(IdealError::Parse { column, .. }) => assert_eq!(column, 7),
            other => panic!("unexpected {other:?}"),
        }
        assert!(MonomialIdeal::parse("X + Z", 2).is_err());
        assert!(MonomialIdeal::parse("X +", 2).is_err());
        assert!(MonomialIdeal::parse("3*X", 2).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let big = ideal(1, &[&[u32::MAX]]);
        assert_eq!(big.product(&big), Err(IdealError::Overflow));
    }
}
