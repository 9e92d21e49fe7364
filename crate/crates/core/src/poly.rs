//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! All indeterminates live in one fixed universe ([`Var`]) so polynomials from
//! different parts of the engine multiply without any renaming step.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// Shorthand for the rational `num/den`.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integer as a rational.
pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub const NVARS: usize = 11;

/// Indeterminates. The declaration order is the monomial order used for
/// rendering and for leading-term selection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    D,
    M,
    L1,
    L2,
    L3,
    T,
    H,
    A1,
    A2,
    A3,
    A4,
}

impl Var {
    pub const ALL: [Var; NVARS] = [
        Var::D,
        Var::M,
        Var::L1,
        Var::L2,
        Var::L3,
        Var::T,
        Var::H,
        Var::A1,
        Var::A2,
        Var::A3,
        Var::A4,
    ];
    pub const LAMBDA: [Var; 3] = [Var::L1, Var::L2, Var::L3];
    pub const ROOTS: [Var; 4] = [Var::A1, Var::A2, Var::A3, Var::A4];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::D => "d",
            Var::M => "m",
            Var::L1 => "l1",
            Var::L2 => "l2",
            Var::L3 => "l3",
            Var::T => "t",
            Var::H => "h",
            Var::A1 => "a1",
            Var::A2 => "a2",
            Var::A3 => "a3",
            Var::A4 => "a4",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Var::ALL.iter().copied().find(|v| v.name() == name)
    }

    pub fn root(i: usize) -> Var {
        Var::ROOTS[i]
    }
}

pub type Monomial = [u8; NVARS];

/// Total degree of `mon` restricted to `vars`.
pub fn degree_in(mon: &Monomial, vars: &[Var]) -> u32 {
    vars.iter().map(|v| mon[v.index()] as u32).sum()
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Poly::zero();
        p.add_term([0; NVARS], c);
        p
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(qi(n))
    }

    pub fn var(v: Var) -> Self {
        Poly::monomial(v, 1)
    }

    pub fn monomial(v: Var, exp: u8) -> Self {
        let mut mon = [0; NVARS];
        mon[v.index()] = exp;
        let mut p = Poly::zero();
        p.add_term(mon, Rational::one());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c * mon`, dropping the term if it cancels.
    pub fn add_term(&mut self, mon: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mon) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mon: &Monomial) -> Rational {
        self.terms.get(mon).cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant value, if the polynomial has no indeterminates.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Product with every term of weighted degree above `max` discarded.
    /// Only the variables in `vars` carry weight one; all others weight zero.
    pub fn mul_truncated(&self, other: &Poly, vars: &[Var], max: u32) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            let da = degree_in(ma, vars);
            if da > max {
                continue;
            }
            for (mb, cb) in &other.terms {
                if da + degree_in(mb, vars) > max {
                    continue;
                }
                out.add_term(add_mon(ma, mb), ca * cb);
            }
        }
        out
    }

    pub fn truncate(&self, vars: &[Var], max: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| degree_in(m, vars) <= max)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Homogeneous component of degree `deg` in `vars`.
    pub fn homogeneous_part(&self, vars: &[Var], deg: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| degree_in(m, vars) == deg)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Maximal total degree in `vars`; `None` for the zero polynomial.
    pub fn degree(&self, vars: &[Var]) -> Option<u32> {
        self.terms.keys().map(|m| degree_in(m, vars)).max()
    }

    pub fn degree_of(&self, v: Var) -> Option<u32> {
        self.degree(&[v])
    }

    /// Coefficient of `v^k`, as a polynomial in the remaining variables.
    pub fn coefficient_of(&self, v: Var, k: u8) -> Poly {
        let i = v.index();
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m[i] == k)
                .map(|(m, c)| {
                    let mut m = *m;
                    m[i] = 0;
                    (m, c.clone())
                })
                .collect(),
        }
    }

    /// Replaces `v` by the polynomial `value`.
    pub fn substitute(&self, v: Var, value: &Poly) -> Poly {
        let i = v.index();
        let max = self.terms.keys().map(|m| m[i]).max().unwrap_or(0);
        let mut powers = vec![Poly::one()];
        for k in 1..=max as usize {
            let next = &powers[k - 1] * value;
            powers.push(next);
        }
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut rest = *m;
            let e = rest[i] as usize;
            rest[i] = 0;
            if e == 0 {
                out.add_term(rest, c.clone());
                continue;
            }
            for (pm, pc) in &powers[e].terms {
                out.add_term(add_mon(&rest, pm), c * pc);
            }
        }
        out
    }

    pub fn eval_var(&self, v: Var, value: &Rational) -> Poly {
        self.substitute(v, &Poly::constant(value.clone()))
    }

    /// Evaluates every variable; missing ones are an error of the caller and
    /// are treated as zero.
    pub fn eval_all(&self, values: &[(Var, Rational)]) -> Rational {
        let mut p = self.clone();
        for (v, x) in values {
            p = p.eval_var(*v, x);
        }
        p.terms
            .iter()
            .filter(|(m, _)| m.iter().all(|&e| e == 0))
            .map(|(_, c)| c.clone())
            .sum()
    }

    /// Univariate evaluation shortcut for polynomials in `d` only.
    pub fn eval_d(&self, d: i64) -> Rational {
        self.eval_all(&[(Var::D, qi(d))])
    }

    /// Permutes variables: `perm[k] = (from, to)` renames `from` to `to`
    /// simultaneously.
    pub fn rename(&self, perm: &[(Var, Var)]) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut nm = *m;
            for (from, _) in perm {
                nm[from.index()] = 0;
            }
            for (from, to) in perm {
                nm[to.index()] += m[from.index()];
            }
            out.add_term(nm, c.clone());
        }
        out
    }

    /// Denominator lcm and the set of variables that actually occur.
    pub fn variables(&self) -> Vec<Var> {
        Var::ALL
            .iter()
            .copied()
            .filter(|v| self.terms.keys().any(|m| m[v.index()] > 0))
            .collect()
    }

    /// Checks that every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Coefficients of a univariate polynomial in `v`, lowest degree first.
    pub fn univariate_coeffs(&self, v: Var) -> Vec<Rational> {
        let deg = self.degree_of(v).unwrap_or(0) as usize;
        let mut out = vec![Rational::zero(); deg + 1];
        for (m, c) in &self.terms {
            out[m[v.index()] as usize] += c;
        }
        out
    }
}

pub(crate) fn add_mon(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = [0u8; NVARS];
    for i in 0..NVARS {
        out[i] = a[i] + b[i];
    }
    out
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(add_mon(ma, mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl From<i64> for Poly {
    fn from(n: i64) -> Self {
        Poly::int(n)
    }
}

/// Canonical ordering for rendering: higher total degree first, then
/// lexicographically larger exponent vectors first.
fn render_order(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

impl Poly {
    /// Terms in canonical rendering order.
    pub fn sorted_terms(&self) -> Vec<(Monomial, Rational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_by(|a, b| render_order(&a.0, &b.0));
        v
    }
}

pub fn render_monomial(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for v in Var::ALL {
        match m[v.index()] {
            0 => {}
            1 => parts.push(v.name().to_string()),
            e => parts.push(format!("{}^{}", v.name(), e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.sorted_terms().iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mon = render_monomial(m);
            if mon.is_empty() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", mon)?;
            } else {
                write!(f, "{}*{}", abs, mon)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

/// Parses the rendering produced by `Display` (sums of `c*x^e*y` terms).
pub fn parse_poly(s: &str) -> Option<Poly> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return None;
    }
    let mut out = Poly::zero();
    let mut chunks = Vec::new();
    let mut cur = String::new();
    for (i, ch) in s.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
            chunks.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    chunks.push(cur);
    for chunk in chunks {
        let (sign, body) = match chunk.strip_prefix('-') {
            Some(b) => (-1, b),
            None => (1, chunk.strip_prefix('+').unwrap_or(&chunk)),
        };
        let mut coeff = qi(sign);
        let mut mon = [0u8; NVARS];
        for factor in body.split('*') {
            if let Some(v) = Var::from_name(factor.split('^').next()?) {
                let e: u8 = match factor.split_once('^') {
                    Some((_, e)) => e.parse().ok()?,
                    None => 1,
                };
                mon[v.index()] += e;
            } else {
                let c: Rational = match factor.split_once('/') {
                    Some((n, d)) => Rational::new(n.parse().ok()?, d.parse().ok()?),
                    None => Rational::from_integer(factor.parse().ok()?),
                };
                coeff *= c;
            }
        }
        out.add_term(mon, coeff);
    }
    Some(out)
}

/// Rational to `f64`, for non-gating numeric sanity checks only.
pub fn to_f64(x: &Rational) -> f64 {
    x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d() -> Poly {
        Poly::var(Var::D)
    }

    #[test]
    fn arithmetic_and_cancellation() {
        let p = &d() + &Poly::int(1);
        let sq = &p * &p;
        assert_eq!(sq.to_string(), "d^2 + 2*d + 1");
        let z = &sq - &sq;
        assert!(z.is_zero());
        assert_eq!(z.to_string(), "0");
    }

    #[test]
    fn truncation_by_weighted_degree() {
        let h = Poly::var(Var::H);
        let p = &(&h + &Poly::int(1)).pow(5) * &d();
        let t = p.truncate(&[Var::H], 2);
        assert_eq!(t.degree(&[Var::H]), Some(2));
        assert_eq!(t.coefficient_of(Var::H, 2), d().scale(&qi(10)));
        let m = p.mul_truncated(&p, &[Var::H], 1);
        assert_eq!(m.degree(&[Var::H]), Some(1));
    }

    #[test]
    fn substitute_and_eval() {
        let p = Poly::var(Var::L1).pow(2);
        let s = p.substitute(Var::L1, &(&d() + &Poly::int(1)));
        assert_eq!(s.eval_d(2), qi(9));
    }

    #[test]
    fn render_parse_roundtrip() {
        let p = parse_poly("389/81648000000*d^4 - 20739/81648000000*d^3 + 3*l1*h - 7").unwrap();
        let again = parse_poly(&p.to_string()).unwrap();
        assert_eq!(p, again);
        assert_eq!(
            p.coefficient_of(Var::D, 4).as_constant(),
            Some(q(389, 81648000000))
        );
    }

    #[test]
    fn rename_swaps_simultaneously() {
        let p = &Poly::var(Var::A1) * &Poly::var(Var::A2).pow(2);
        let r = p.rename(&[(Var::A1, Var::A2), (Var::A2, Var::A1)]);
        assert_eq!(r, &Poly::var(Var::A2) * &Poly::var(Var::A1).pow(2));
    }
}
