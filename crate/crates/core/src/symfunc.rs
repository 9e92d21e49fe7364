//! Schur polynomials in finitely many variables, Schur-basis expansion of
//! products, formal characters, and rewriting of symmetric polynomials in
//! elementary symmetric ones.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::chow::ChowClass;
use crate::combinat::{enumerate_gt_patterns, Partition};
use crate::error::{Error, Result};
use crate::poly::{degree_in, Monomial, Poly, Rational, Var, NVARS};

/// Polynomial in `nvars` variables `x_1..x_r`, exponent vectors of fixed length.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SymPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl SymPoly {
    pub fn zero(nvars: usize) -> Self {
        SymPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(exps: Vec<u32>, c: Rational) -> Self {
        let mut p = SymPoly::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> SymPoly {
        let mut out = SymPoly::zero(self.nvars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &SymPoly) -> SymPoly {
        let mut out = SymPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// Lexicographically largest monomial.
    pub fn leading(&self) -> Option<(&Vec<u32>, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter().zip(point).fold(c.clone(), |acc, (&k, x)| {
                    acc * num_traits::pow(x.clone(), k as usize)
                })
            })
            .sum()
    }

    /// Applies the variable permutation `x_i -> x_{perm[i]}`.
    pub fn permute(&self, perm: &[usize]) -> SymPoly {
        let mut out = SymPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; self.nvars];
            for (i, &k) in e.iter().enumerate() {
                ne[perm[i]] = k;
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.nvars.saturating_sub(1)).all(|i| {
            let mut perm: Vec<usize> = (0..self.nvars).collect();
            perm.swap(i, i + 1);
            self.permute(&perm) == *self
        })
    }

    /// Exact division; `None` if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &SymPoly) -> Option<SymPoly> {
        let (lead_e, lead_c) = divisor.leading()?;
        let mut rem = self.clone();
        let mut quot = SymPoly::zero(self.nvars);
        while let Some((e, c)) = rem.leading().map(|(e, c)| (e.clone(), c.clone())) {
            if e.iter().zip(lead_e).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Vec<u32> = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            let qc = c / lead_c;
            let term = SymPoly::monomial(qe, qc);
            rem = rem.sub(&term.mul(divisor));
            quot = quot.add(&term);
        }
        Some(quot)
    }
}

/// Alternant `det[x_i^{alpha_j}]`.
fn alternant(alpha: &[u32]) -> SymPoly {
    let r = alpha.len();
    let mut out = SymPoly::zero(r);
    for perm in permutations(r) {
        let mut e = vec![0; r];
        for (j, &i) in perm.iter().enumerate() {
            e[i] = alpha[j];
        }
        let sign = if permutation_sign(&perm) {
            Rational::one()
        } else {
            -Rational::one()
        };
        out.add_term(e, sign);
    }
    out
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// `true` for even permutations.
pub(crate) fn permutation_sign(p: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in (i + 1)..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

/// Bialternant construction `a_{p + delta} / a_delta`.
pub fn schur_bialternant(p: &Partition, r: usize) -> Result<SymPoly> {
    if p.len() > r {
        return Err(Error::Precondition(format!(
            "{} has more than {} rows",
            p, r
        )));
    }
    let padded = p.padded(r);
    let shifted: Vec<u32> = padded
        .iter()
        .enumerate()
        .map(|(i, &x)| x + (r - 1 - i) as u32)
        .collect();
    let delta: Vec<u32> = (0..r).map(|i| (r - 1 - i) as u32).collect();
    alternant(&shifted)
        .exact_div(&alternant(&delta))
        .ok_or_else(|| Error::Internal(format!("alternant quotient for {} is not exact", p)))
}

/// Sum of monomials over Gelfand-Tsetlin weights.
pub fn schur_from_weights(p: &Partition, r: usize) -> Result<SymPoly> {
    let mut out = SymPoly::zero(r);
    for (w, m) in enumerate_gt_patterns(p, r)? {
        out.add_term(
            w.iter().map(|&x| x as u32).collect(),
            Rational::from_integer(m.into()),
        );
    }
    Ok(out)
}

/// Schur polynomial `s_p(x_1..x_r)`, computed by both constructions; they
/// must agree.
pub fn schur_polynomial(p: &Partition, r: usize) -> Result<SymPoly> {
    let bi = schur_bialternant(p, r)?;
    let gt = schur_from_weights(p, r)?;
    if bi != gt {
        return Err(Error::Internal(format!(
            "bialternant and GT constructions of s_{} differ",
            p
        )));
    }
    Ok(bi)
}

/// Schur expansion of a symmetric polynomial by peeling off leading monomials.
pub fn expand_in_schur_basis(f: &SymPoly) -> Result<BTreeMap<Partition, BigInt>> {
    let r = f.nvars();
    let mut rem = f.clone();
    let mut out = BTreeMap::new();
    while let Some((e, c)) = rem.leading().map(|(e, c)| (e.clone(), c.clone())) {
        if e.windows(2).any(|w| w[0] < w[1]) || !c.is_integer() {
            return Err(Error::Internal(
                "input is not a non-negative Schur combination".into(),
            ));
        }
        let p = Partition::new(e).expect("decreasing");
        let s = schur_from_weights(&p, r)?;
        rem = rem.sub(&s.scale(&c));
        out.insert(p, c.to_integer());
    }
    if out.values().any(|c: &BigInt| c.is_negative()) {
        return Err(Error::Internal("negative Schur coefficient".into()));
    }
    Ok(out)
}

/// `s_p * s_q` in the Schur basis. Requires `r >= len(p) + len(q)` so that
/// no constituent is lost to the variable count.
pub fn schur_product_expand(
    p: &Partition,
    q: &Partition,
    r: usize,
) -> Result<BTreeMap<Partition, BigInt>> {
    if r < p.len() + q.len() {
        return Err(Error::Precondition(format!(
            "{} variables cannot hold every constituent of s_{} * s_{}",
            r, p, q
        )));
    }
    schur_product_expand_truncated(p, q, r)
}

/// `s_p * s_q` in `r` variables: exactly the constituents with at most `r` rows.
pub fn schur_product_expand_truncated(
    p: &Partition,
    q: &Partition,
    r: usize,
) -> Result<BTreeMap<Partition, BigInt>> {
    if p.len() > r || q.len() > r {
        return Ok(BTreeMap::new());
    }
    let prod = schur_from_weights(p, r)?.mul(&schur_from_weights(q, r)?);
    expand_in_schur_basis(&prod)
}

/// Elementary symmetric polynomial `e_k` in the root variables `roots`.
pub fn elementary_in(roots: &[Var], k: usize) -> Poly {
    let mut out = Poly::zero();
    let r = roots.len();
    fn rec(roots: &[Var], start: usize, left: usize, mon: &mut Monomial, out: &mut Poly) {
        if left == 0 {
            out.add_term(*mon, Rational::one());
            return;
        }
        for i in start..roots.len() {
            mon[roots[i].index()] += 1;
            rec(roots, i + 1, left - 1, mon, out);
            mon[roots[i].index()] -= 1;
        }
    }
    if k <= r {
        rec(roots, 0, k, &mut [0; NVARS], &mut out);
    }
    out
}

/// Rewrites `f`, symmetric in `roots` (coefficients may involve any other
/// variables), as a polynomial in the elementary symmetric functions and
/// substitutes `values[k - 1]` for `e_k`.
pub fn substitute_elementary(f: &Poly, roots: &[Var], values: &[Poly]) -> Result<Poly> {
    let r = roots.len();
    assert_eq!(values.len(), r);
    let elementary: Vec<Poly> = (1..=r).map(|k| elementary_in(roots, k)).collect();
    let mut rem = f.clone();
    let mut out = Poly::zero();
    loop {
        // Leading root-exponent vector (lexicographic in roots order).
        let lead = rem
            .terms()
            .map(|(m, _)| roots.iter().map(|v| m[v.index()]).collect::<Vec<u8>>())
            .max();
        let Some(lead) = lead else { break };
        if lead.iter().all(|&e| e == 0) {
            out += &rem;
            break;
        }
        if lead.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Internal(
                "polynomial is not symmetric in the roots".into(),
            ));
        }
        // Coefficient of the leading root monomial.
        let mut coeff = Poly::zero();
        for (m, c) in rem.terms() {
            if roots.iter().zip(&lead).all(|(v, &e)| m[v.index()] == e) {
                let mut rest = *m;
                for v in roots {
                    rest[v.index()] = 0;
                }
                coeff.add_term(rest, c.clone());
            }
        }
        // prod e_k^{lead_k - lead_{k+1}} has the same leading monomial.
        let mut in_roots = coeff.clone();
        let mut in_values = coeff;
        for k in 0..r {
            let exp = lead[k] as u32 - if k + 1 < r { lead[k + 1] as u32 } else { 0 };
            if exp > 0 {
                in_roots = &in_roots * &elementary[k].pow(exp);
                in_values = &in_values * &values[k].pow(exp);
            }
        }
        rem -= &in_roots;
        out += &in_values;
    }
    Ok(out)
}

/// Formal character `sum_mu exp(sum_i mu_i c_i)` of `Γ^p(⊕ ξ_i)` where
/// `c_i = c_1(ξ_i)`, truncated at the ring's top degree.
pub fn formal_character(p: &Partition, line_classes: &[ChowClass]) -> Result<ChowClass> {
    let first = line_classes
        .first()
        .ok_or_else(|| Error::Precondition("no line classes".into()))?;
    let variety = first.variety().clone();
    if line_classes.iter().any(|c| c.variety() != &variety) {
        return Err(Error::RingMismatch);
    }
    let r = line_classes.len();
    let mut out = ChowClass::zero(&variety);
    for (w, m) in enumerate_gt_patterns(p, r)? {
        let mut sum = ChowClass::zero(&variety);
        for (i, &wi) in w.iter().enumerate() {
            sum = sum.add(&line_classes[i].scale(&Rational::from_integer(wi.into())))?;
        }
        out = out.add(&sum.exp().scale(&Rational::from_integer(m.into())))?;
    }
    Ok(out)
}

/// Degree of `f` in the root variables.
pub fn root_degree(f: &Poly, roots: &[Var]) -> u32 {
    f.terms()
        .map(|(m, _)| degree_in(m, roots))
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::qi;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn schur_examples() {
        let e2 = schur_polynomial(&part(&[1, 1]), 2).unwrap();
        assert_eq!(e2, SymPoly::monomial(vec![1, 1], qi(1)));
        let h2 = schur_polynomial(&part(&[2]), 2).unwrap();
        let mut expect = SymPoly::zero(2);
        for e in [vec![2, 0], vec![1, 1], vec![0, 2]] {
            expect.add_term(e, qi(1));
        }
        assert_eq!(h2, expect);
        let s21 = schur_polynomial(&part(&[2, 1]), 3).unwrap();
        assert_eq!(s21.eval(&[qi(1), qi(1), qi(1)]), qi(8));
    }

    #[test]
    fn product_examples() {
        let one = part(&[1]);
        let e = schur_product_expand(&one, &one, 2).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e[&part(&[2])], BigInt::from(1));
        assert_eq!(e[&part(&[1, 1])], BigInt::from(1));
        let e = schur_product_expand(&part(&[1, 1]), &one, 3).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e[&part(&[2, 1])], BigInt::from(1));
        assert_eq!(e[&part(&[1, 1, 1])], BigInt::from(1));
        for (b1, b2) in [(2, 1), (3, 2), (4, 1)] {
            let e = schur_product_expand(&one, &part(&[b1 - 1, b2]), 3).unwrap();
            assert_eq!(e[&part(&[b1, b2])], BigInt::from(1));
        }
        assert!(matches!(
            schur_product_expand(&part(&[1, 1]), &one, 2),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn elementary_rewrite_of_power_sum() {
        let roots = [Var::A1, Var::A2, Var::A3];
        // p2 = e1^2 - 2 e2
        let p2: Poly = roots
            .iter()
            .map(|&v| Poly::var(v).pow(2))
            .fold(Poly::zero(), |a, b| a + b);
        let vals = [Poly::var(Var::L1), Poly::var(Var::L2), Poly::var(Var::L3)];
        let r = substitute_elementary(&p2, &roots, &vals).unwrap();
        let expect = &Poly::var(Var::L1).pow(2) - &Poly::var(Var::L2).scale(&qi(2));
        assert_eq!(r, expect);
        let asym = Poly::var(Var::A1);
        assert!(substitute_elementary(&asym, &roots, &vals).is_err());
    }
}
