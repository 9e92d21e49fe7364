//! Upper bounds for `h²` of Schur powers through a second difference of
//! Euler characteristics, the weight `g(λ)`, the constant `C` and the degree
//! thresholds built from them.

use num_traits::{Signed, Zero};

use crate::chow::{
    chern_classes, flag_chi_closed_form, flag_positivity_bound, Atom, ChowClass, Degree,
    VarietySpec,
};
use crate::combinat::Partition;
use crate::error::{Error, Result};
use crate::jets::{
    fit_leading, fit_quasi_polynomial, moments, LambdaForm, PieceFilter, MAX_PERIOD,
};
use crate::poly::{q, qi, Poly, Rational, Var};

/// `g(λ) = (3/2)|λ|³ ∏_{i<j} (λ_i - λ_j)` as a polynomial in `l1, l2, l3`.
pub fn g_polynomial() -> Poly {
    let l: Vec<Poly> = Var::LAMBDA.iter().map(|&v| Poly::var(v)).collect();
    let size = &(&l[0] + &l[1]) + &l[2];
    let vandermonde = &(&(&l[0] - &l[1]) * &(&l[0] - &l[2])) * &(&l[1] - &l[2]);
    (&size.pow(3) * &vandermonde).scale(&q(3, 2))
}

pub fn g_weight(lambda: &Partition) -> Result<Rational> {
    if lambda.len() > 3 {
        return Err(Error::Precondition(format!(
            "{} has more than 3 parts",
            lambda
        )));
    }
    let p: Vec<i64> = lambda.padded(3).iter().map(|&x| x as i64).collect();
    let size: i64 = p.iter().sum();
    let prod = (p[0] - p[1]) * (p[0] - p[2]) * (p[1] - p[2]);
    Ok(q(3, 2) * qi(size).pow(3) * qi(prod))
}

fn is_strict(lambda: &Partition) -> bool {
    let p = lambda.padded(3);
    p[0] > p[1] && p[1] > p[2]
}

fn at_lambda(p: &Poly, lambda: &Partition) -> Poly {
    let parts = lambda.padded(3);
    Var::LAMBDA
        .iter()
        .zip(parts)
        .fold(p.clone(), |acc, (&v, x)| acc.eval_var(v, &qi(x as i64)))
}

/// `d(d+13)` (compact) or `d+14` (log).
pub fn degree_factor(log: bool) -> Poly {
    let d = Poly::var(Var::D);
    if log {
        &d + &Poly::int(14)
    } else {
        &d * &(&d + &Poly::int(13))
    }
}

fn carrier(d: Degree, log: bool) -> Result<VarietySpec> {
    if log {
        VarietySpec::log_pair(d)
    } else {
        VarietySpec::hypersurface(4, d)
    }
}

/// `B(λ) = χ(Γ^λ ⊗ O(9|λ|)) - 2χ(Γ^λ ⊗ O(6|λ|)) + χ(Γ^λ ⊗ O(3|λ|))`,
/// symbolic in `λ`.
pub fn bound_polynomial(v: &VarietySpec) -> Result<Poly> {
    let chi = |u: i64| flag_chi_closed_form(v, [qi(u), qi(u), qi(u)]);
    Ok(&(&chi(9)? - &chi(6)?.scale(&qi(2))) + &chi(3)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub lambda: Partition,
    pub degree: Degree,
    pub log: bool,
    /// `B` symbolic in `λ`.
    pub bound: Poly,
    /// Homogeneous part of `bound` of degree 6 in `λ`.
    pub leading_part: Poly,
    /// `bound - leading_part`.
    pub remainder: Poly,
    /// `B` at `lambda`.
    pub value: Poly,
}

impl BoundReport {
    /// `leading_part - g(λ)·factor`, symbolic in `λ`.
    pub fn shape_difference(&self) -> Poly {
        &self.leading_part - &(&g_polynomial() * &degree_factor(self.log))
    }

    /// `bound - g(λ)·factor`; the shape claim is that this has `λ`-degree ≤ 5.
    pub fn excess(&self) -> Poly {
        &self.bound - &(&g_polynomial() * &self.degree.specialize(&degree_factor(self.log)))
    }
}

/// `h²(X, Γ^λ Ω) ≤ B(λ, d)`, valid once the twisted line bundle on the flag
/// bundle is positive.
pub fn h2_partition_bound(lambda: &Partition, d: Degree, log: bool) -> Result<BoundReport> {
    if !is_strict(lambda) {
        return Err(Error::Precondition(format!(
            "{} is not strictly decreasing",
            lambda
        )));
    }
    if let Degree::Fixed(n) = d {
        let limit = flag_positivity_bound(n, log);
        if lambda.size() as i64 <= limit {
            let shape = if log {
                "|λ| > 3d+2"
            } else {
                "|λ| > 4(d-5)+18"
            };
            return Err(Error::Precondition(format!(
                "{} fails {} ({} <= {})",
                lambda,
                shape,
                lambda.size(),
                limit
            )));
        }
    }
    let bound = bound_polynomial(&carrier(d, log)?)?;
    let leading_part = bound.homogeneous_part(&Var::LAMBDA, 6);
    let remainder = &bound - &leading_part;
    let value = at_lambda(&bound, lambda);
    Ok(BoundReport {
        lambda: lambda.clone(),
        degree: d,
        log,
        bound,
        leading_part,
        remainder,
        value,
    })
}

fn g_form() -> Result<LambdaForm> {
    LambdaForm::new(&g_polynomial())
}

/// `Σ g(λ)` over the pieces of `Gr E_{3,m}`.
pub fn sum_g(m: u64) -> Result<Rational> {
    sum_g_filtered(m, PieceFilter::All)
}

pub fn sum_g_filtered(m: u64, filter: PieceFilter) -> Result<Rational> {
    let s = g_form()?.apply(&moments(3, m, filter)?);
    s.as_constant()
        .ok_or_else(|| Error::Internal("g sum is not a number".into()))
}

/// Leading `m⁹` coefficient of `Σ g` over the order-3 pieces.
pub fn constant_c_filtered(filter: PieceFilter) -> Result<Rational> {
    let form = g_form()?;
    let qp = fit_quasi_polynomial(|m| Ok(form.apply(&moments(3, m, filter)?)), 9, MAX_PERIOD)?;
    qp.coefficient(9)?
        .as_constant()
        .ok_or_else(|| Error::Internal("leading coefficient is not a number".into()))
}

pub fn constant_c() -> Result<Rational> {
    constant_c_filtered(PieceFilter::All)
}

/// Smallest integer `d0 ≥ lower` such that `p(d) > 0` for every integer
/// `d ≥ d0`, or `None` if `p` is eventually non-positive.
pub fn eventual_positivity_threshold(p: &Poly, lower: i64) -> Option<i64> {
    let coeffs = p.univariate_coeffs(Var::D);
    let lead = coeffs.iter().rposition(|c| !c.is_zero())?;
    if !coeffs[lead].is_positive() {
        return None;
    }
    // Cauchy: every real root is below 1 + max |a_i / a_n|.
    let mut bound = Rational::zero();
    for c in &coeffs[..lead] {
        let r = (c / &coeffs[lead]).abs();
        if r > bound {
            bound = r;
        }
    }
    let start = (bound.ceil().to_integer() + 1i32)
        .try_into()
        .unwrap_or(i64::MAX);
    let mut d = start.max(lower);
    while d > lower && p.eval_d(d - 1).is_positive() {
        d -= 1;
    }
    Some(d)
}

/// `389d³ - 20739d² + 185559d - 358873` times `d`, scaled to the leading
/// coefficient of `χ(E_{3,m})`.
pub fn euler_quartic() -> Poly {
    crate::poly::parse_poly("389*d^4 - 20739*d^3 + 185559*d^2 - 358873*d").expect("literal")
}

/// First degree from which the quartic stays positive.
pub fn threshold_euler_quartic() -> i64 {
    eventual_positivity_threshold(&euler_quartic(), 2).expect("positive leading coefficient")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdReport {
    pub log: bool,
    /// Degree from which positivity is claimed.
    pub claimed: i64,
    pub upper: i64,
    /// `Δ(d) = lead(d) - C·factor(d)`.
    pub delta: Poly,
    /// `Δ(d) > 0` on `[claimed, upper]`.
    pub holds_on_range: bool,
    pub leading_positive: bool,
    /// Smallest degree from which `Δ` stays positive.
    pub minimal_found: Option<i64>,
}

impl ThresholdReport {
    pub fn verified(&self) -> bool {
        self.holds_on_range && self.leading_positive
    }
}

pub const THRESHOLD_UPPER: i64 = 500;

pub fn claimed_threshold(log: bool) -> i64 {
    if log {
        92
    } else {
        97
    }
}

/// `Δ(d)` from the computed leading coefficient of `χ(E_{3,m})` and `C`.
pub fn threshold_delta(lead: &Poly, c: &Rational, log: bool) -> Poly {
    lead - &degree_factor(log).scale(c)
}

pub fn threshold_report(lead: &Poly, c: &Rational, log: bool) -> ThresholdReport {
    let delta = threshold_delta(lead, c, log);
    let claimed = claimed_threshold(log);
    let holds_on_range = (claimed..=THRESHOLD_UPPER).all(|d| delta.eval_d(d).is_positive());
    let coeffs = delta.univariate_coeffs(Var::D);
    let leading_positive = coeffs
        .iter()
        .rev()
        .find(|c| !c.is_zero())
        .is_some_and(|c| c.is_positive());
    ThresholdReport {
        log,
        claimed,
        upper: THRESHOLD_UPPER,
        minimal_found: eventual_positivity_threshold(&delta, 2),
        delta,
        holds_on_range,
        leading_positive,
    }
}

/// Computes the leading coefficient and `C` from scratch, then checks the
/// threshold.
pub fn threshold_order3(log: bool) -> Result<ThresholdReport> {
    let v = carrier(Degree::Symbolic, log)?;
    let (_, lead) = fit_leading(&v, 3, 9)?;
    let c = constant_c()?;
    Ok(threshold_report(&lead, &c, log))
}

/// `13c₁² - 9c₂` of a smooth degree-`d` surface in `P³`, and the degree
/// from which it stays positive.
pub fn surface_2jet_bound() -> Result<(Poly, i64)> {
    let s = VarietySpec::hypersurface(3, Degree::Symbolic)?;
    let c = chern_classes(&s, Atom::TangentX)?;
    let c1sq = ChowClass::new(&s, &c[0] * &c[0]).integrate();
    let c2 = ChowClass::new(&s, c[1].clone()).integrate();
    let coeff = &c1sq.scale(&qi(13)) - &c2.scale(&qi(9));
    let threshold = eventual_positivity_threshold(&coeff, 1)
        .ok_or_else(|| Error::Internal("surface coefficient is not eventually positive".into()))?;
    Ok((coeff, threshold))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn g_examples() {
        assert_eq!(g_weight(&p(&[2, 1])).unwrap(), qi(81));
        assert_eq!(g_weight(&p(&[5])).unwrap(), qi(0));
        assert_eq!(g_weight(&p(&[3, 1])).unwrap(), qi(576));
        assert_eq!(
            at_lambda(&g_polynomial(), &p(&[7, 4, 1])),
            Poly::constant(g_weight(&p(&[7, 4, 1])).unwrap())
        );
    }

    #[test]
    fn sum_g_small() {
        assert_eq!(sum_g(1).unwrap(), qi(0));
        assert_eq!(sum_g(5).unwrap(), qi(657));
    }

    #[test]
    fn quartic_threshold() {
        assert_eq!(threshold_euler_quartic(), 43);
        assert!(euler_quartic().eval_d(42) < qi(0));
        assert!(euler_quartic().eval_d(43) > qi(0));
    }

    #[test]
    fn surface_threshold() {
        let (c, t) = surface_2jet_bound().unwrap();
        assert_eq!(c, parse_poly("4*d^3 - 68*d^2 + 154*d").unwrap());
        assert_eq!(t, 15);
        assert_eq!(c.eval_d(14), qi(-196));
    }

    #[test]
    fn eventual_positivity() {
        // (d-3)(d-10) is positive from 11 on, and at 1 and 2
        let f = parse_poly("d^2 - 13*d + 30").unwrap();
        assert_eq!(eventual_positivity_threshold(&f, 1), Some(11));
        assert_eq!(eventual_positivity_threshold(&-f, 1), None);
        assert_eq!(eventual_positivity_threshold(&Poly::int(3), 2), Some(2));
    }

    #[test]
    fn bound_preconditions() {
        assert!(h2_partition_bound(&p(&[3, 2, 1]), Degree::Fixed(20), false).is_err());
        assert!(h2_partition_bound(&p(&[3, 3, 1]), Degree::Fixed(2), false).is_err());
        let r = h2_partition_bound(&p(&[60, 40, 20]), Degree::Fixed(7), false).unwrap();
        assert_eq!(r.remainder.degree(&Var::LAMBDA).map_or(0, |x| x), 5);
    }
}
