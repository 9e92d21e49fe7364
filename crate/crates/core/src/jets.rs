//! Graded pieces of the jet bundles `E_{2,m}` and `E_{3,m}` in dimension 3,
//! their aggregated Euler characteristics, and quasi-polynomial fitting in `m`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::chow::{
    euler_characteristic, exponent_vectors, flag_chi_closed_form, BundleExpr, VarietySpec,
};
use crate::combinat::Partition;
use crate::error::{Error, Result};
use crate::poly::{qi, Monomial, Poly, Rational, Var};

/// One graded piece `Γ^λ` (with multiplicity index `γ` for order 3).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JetPiece {
    pub gamma: u64,
    pub lambda: Partition,
}

impl JetPiece {
    pub fn parts3(&self) -> [u64; 3] {
        let p = self.lambda.padded(3);
        [p[0] as u64, p[1] as u64, p[2] as u64]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetDecomposition {
    pub order: u8,
    pub m: u64,
    pub pieces: Vec<JetPiece>,
}

impl JetDecomposition {
    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }
}

fn check_order(order: u8) -> Result<()> {
    if order == 2 || order == 3 {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "jet order {} not in {{2,3}}",
            order
        )))
    }
}

fn check_m(m: u64) -> Result<()> {
    if m == 0 {
        return Err(Error::Precondition("m must be at least 1".into()));
    }
    Ok(())
}

/// Visits `(γ, λ)` for `γ` ascending, `λ` lexicographically descending.
///
/// Writing `λ3 = c`, `λ2 = c + γ + y`, `λ1 = λ2 + γ + x`, the constraints
/// become `x = m - 5γ - 6c - 3y ≥ 0`.
fn for_each_gr3(m: u64, mut f: impl FnMut(u64, [u64; 3])) {
    for gamma in 0..=m / 5 {
        let rest = m - 5 * gamma;
        // λ1 = m - 3γ - 5c - 2y decreases in both c and y; with λ1 fixed a
        // smaller c means a larger λ2 = c + γ + y.
        let mut row: Vec<[u64; 3]> = Vec::new();
        for c in 0..=rest / 6 {
            for y in 0..=(rest - 6 * c) / 3 {
                let l3 = c;
                let l2 = c + gamma + y;
                let l1 = m - 3 * gamma - 5 * c - 2 * y;
                row.push([l1, l2, l3]);
            }
        }
        row.sort_unstable_by(|a, b| b.cmp(a));
        for l in row {
            f(gamma, l);
        }
    }
}

pub fn decompose_gr3(m: u64) -> Result<JetDecomposition> {
    check_m(m)?;
    let mut pieces = Vec::new();
    for_each_gr3(m, |gamma, l| {
        pieces.push(JetPiece {
            gamma,
            lambda: Partition::new(l.iter().map(|&x| x as u32).collect())
                .expect("decreasing by construction"),
        })
    });
    Ok(JetDecomposition {
        order: 3,
        m,
        pieces,
    })
}

pub fn decompose_gr2(m: u64) -> Result<JetDecomposition> {
    check_m(m)?;
    let pieces = (0..=m / 3)
        .map(|l2| JetPiece {
            gamma: 0,
            lambda: Partition::new(vec![(m - 2 * l2) as u32, l2 as u32]).expect("l1 >= l2"),
        })
        .collect();
    Ok(JetDecomposition {
        order: 2,
        m,
        pieces,
    })
}

pub fn decompose(order: u8, m: u64) -> Result<JetDecomposition> {
    check_order(order)?;
    if order == 2 {
        decompose_gr2(m)
    } else {
        decompose_gr3(m)
    }
}

/// Which pieces enter a power sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PieceFilter {
    All,
    /// Order 3 only: drop the `γ = 0` pieces.
    PositiveGamma,
}

/// `S_α(m) = Σ_pieces λ^α` for all `|α| ≤ 6`, in the order of
/// [`moment_exponents`].
pub type Moments = Arc<Vec<i128>>;

pub fn moment_exponents() -> &'static [Vec<u32>] {
    static EXPS: OnceLock<Vec<Vec<u32>>> = OnceLock::new();
    EXPS.get_or_init(|| exponent_vectors(3, 6))
}

type MomentKey = (u8, u64, PieceFilter);

fn moment_cache() -> &'static Mutex<HashMap<MomentKey, Moments>> {
    static CACHE: OnceLock<Mutex<HashMap<MomentKey, Moments>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn accumulate(acc: &mut [i128], l: [u64; 3]) {
    let mut pw = [[0i128; 7]; 3];
    for i in 0..3 {
        pw[i][0] = 1;
        for k in 1..7 {
            pw[i][k] = pw[i][k - 1] * l[i] as i128;
        }
    }
    for (slot, a) in acc.iter_mut().zip(moment_exponents()) {
        *slot += pw[0][a[0] as usize] * pw[1][a[1] as usize] * pw[2][a[2] as usize];
    }
}

/// Power sums of the piece weights, memoized.
pub fn moments(order: u8, m: u64, filter: PieceFilter) -> Result<Moments> {
    check_order(order)?;
    check_m(m)?;
    let key = (order, m, filter);
    if let Some(hit) = moment_cache().lock().expect("cache poisoned").get(&key) {
        return Ok(hit.clone());
    }
    let mut acc = vec![0i128; moment_exponents().len()];
    if order == 3 {
        for_each_gr3(m, |gamma, l| {
            if filter == PieceFilter::All || gamma > 0 {
                accumulate(&mut acc, l)
            }
        });
    } else if filter == PieceFilter::All {
        for l2 in 0..=m / 3 {
            accumulate(&mut acc, [m - 2 * l2, l2, 0]);
        }
    }
    let acc = Arc::new(acc);
    moment_cache()
        .lock()
        .expect("cache poisoned")
        .insert(key, acc.clone());
    Ok(acc)
}

/// A polynomial in `λ1, λ2, λ3` of degree ≤ 6, split into its `λ`-monomial
/// coefficients (aligned with [`moment_exponents`]).
#[derive(Clone, Debug)]
pub struct LambdaForm {
    coeffs: Vec<Poly>,
}

impl LambdaForm {
    pub fn new(p: &Poly) -> Result<Self> {
        let exps = moment_exponents();
        let index: HashMap<&[u32], usize> = exps
            .iter()
            .enumerate()
            .map(|(i, e)| (e.as_slice(), i))
            .collect();
        let mut coeffs = vec![Poly::zero(); exps.len()];
        for (mon, c) in p.terms() {
            let alpha: Vec<u32> = Var::LAMBDA.iter().map(|v| mon[v.index()] as u32).collect();
            let slot = index
                .get(alpha.as_slice())
                .ok_or_else(|| Error::Precondition(format!("λ-degree of {:?} exceeds 6", alpha)))?;
            let mut rest: Monomial = *mon;
            for v in Var::LAMBDA {
                rest[v.index()] = 0;
            }
            coeffs[*slot].add_term(rest, c.clone());
        }
        Ok(LambdaForm { coeffs })
    }

    /// `Σ_α coeff_α · S_α`.
    pub fn apply(&self, s: &[i128]) -> Poly {
        let mut out = Poly::zero();
        for (c, &v) in self.coeffs.iter().zip(s) {
            if v != 0 && !c.is_zero() {
                out += &c.scale(&Rational::from_integer(BigInt::from(v)));
            }
        }
        out
    }
}

fn jet_form(v: &VarietySpec) -> Result<Arc<LambdaForm>> {
    static CACHE: OnceLock<Mutex<HashMap<VarietySpec, Arc<LambdaForm>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().expect("cache poisoned").get(v) {
        return Ok(hit.clone());
    }
    let chi = flag_chi_closed_form(v, [qi(0), qi(0), qi(0)])?;
    let form = Arc::new(LambdaForm::new(&chi)?);
    cache
        .lock()
        .expect("cache poisoned")
        .insert(v.clone(), form.clone());
    Ok(form)
}

/// `χ(Gr E_{order,m})`: the closed form summed over the pieces through their
/// power sums.
pub fn chi_jets(v: &VarietySpec, order: u8, m: u64) -> Result<Poly> {
    let form = jet_form(v)?;
    Ok(form.apply(&moments(order, m, PieceFilter::All)?))
}

/// Same sum, piece by piece through the weight-enumeration engine. Slow; an
/// oracle for small `m`.
pub fn chi_jets_by_pieces(v: &VarietySpec, order: u8, m: u64) -> Result<Poly> {
    let atom = v.cotangent_atom()?;
    let dec = decompose(order, m)?;
    let parts: Vec<Poly> = dec
        .pieces
        .par_iter()
        .map(|p| euler_characteristic(v, &BundleExpr::schur_partition(&p.lambda, 3, atom)))
        .collect::<Result<_>>()?;
    Ok(parts.into_iter().fold(Poly::zero(), |a, b| a + b))
}

/// Polynomial in `m` on each residue class modulo `period`; coefficients are
/// polynomials in `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPolynomial {
    pub period: u64,
    /// `residues[r]` is a polynomial in [`Var::M`].
    pub residues: Vec<Poly>,
}

impl QuasiPolynomial {
    pub fn eval(&self, m: u64) -> Poly {
        self.residues[(m % self.period) as usize].substitute(Var::M, &Poly::int(m as i64))
    }

    /// Coefficient of `m^k`, required to be the same on every residue.
    pub fn coefficient(&self, k: u32) -> Result<Poly> {
        let first = self.residues[0].coefficient_of(Var::M, k as u8);
        for (r, p) in self.residues.iter().enumerate().skip(1) {
            if p.coefficient_of(Var::M, k as u8) != first {
                return Err(Error::Internal(format!(
                    "m^{} coefficient differs on residue {} mod {}",
                    k, r, self.period
                )));
            }
        }
        Ok(first)
    }

    pub fn degree(&self) -> u32 {
        self.residues
            .iter()
            .filter_map(|p| p.degree_of(Var::M))
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for QuasiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, p) in self.residues.iter().enumerate() {
            writeln!(f, "m ≡ {} (mod {}): {}", r, self.period, p)?;
        }
        Ok(())
    }
}

pub const MAX_PERIOD: u64 = 60;
pub const HOLDOUTS: usize = 3;

/// Lagrange basis polynomials in one variable, as coefficient vectors.
fn lagrange_basis(xs: &[i64]) -> Vec<Vec<Rational>> {
    let n = xs.len();
    (0..n)
        .map(|i| {
            let mut num = vec![Rational::one()];
            let mut den = Rational::one();
            for (j, &xj) in xs.iter().enumerate() {
                if i == j {
                    continue;
                }
                // num *= (x - xj)
                let mut next = vec![Rational::zero(); num.len() + 1];
                for (k, c) in num.iter().enumerate() {
                    next[k + 1] += c;
                    next[k] -= c * qi(xj);
                }
                num = next;
                den *= qi(xs[i] - xj);
            }
            num.into_iter().map(|c| c / &den).collect()
        })
        .collect()
}

fn interpolate(xs: &[i64], ys: &[Poly]) -> Poly {
    let basis = lagrange_basis(xs);
    let mut out = Poly::zero();
    for (b, y) in basis.iter().zip(ys) {
        for (k, c) in b.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out += &(&y.scale(c) * &Poly::monomial(Var::M, k as u8));
        }
    }
    out
}

/// Finds the smallest period `P ≤ max_period` such that on every residue
/// class a polynomial of degree ≤ `degree` through `degree + 1` samples also
/// matches `HOLDOUTS` further samples.
pub fn fit_quasi_polynomial<F>(f: F, degree: u32, max_period: u64) -> Result<QuasiPolynomial>
where
    F: Fn(u64) -> Result<Poly> + Sync,
{
    let memo: Mutex<HashMap<u64, Poly>> = Mutex::new(HashMap::new());
    let value = |m: u64| -> Result<Poly> {
        if let Some(v) = memo.lock().expect("memo poisoned").get(&m) {
            return Ok(v.clone());
        }
        let v = f(m)?;
        memo.lock().expect("memo poisoned").insert(m, v.clone());
        Ok(v)
    };
    let per_residue = degree as usize + 1 + HOLDOUTS;
    let samples = |period: u64, r: u64| -> Vec<u64> {
        let start = if r == 0 { 1 } else { 0 };
        (start..start + per_residue as u64)
            .map(|k| r + period * k)
            .collect()
    };
    'period: for period in 1..=max_period {
        let all: Vec<u64> = (0..period).flat_map(|r| samples(period, r)).collect();
        all.par_iter()
            .map(|&m| value(m).map(|_| ()))
            .collect::<Result<Vec<()>>>()?;
        let mut residues = Vec::with_capacity(period as usize);
        for r in 0..period {
            let ms = samples(period, r);
            let ys: Vec<Poly> = ms.iter().map(|&m| value(m)).collect::<Result<_>>()?;
            let xs: Vec<i64> = ms.iter().map(|&m| m as i64).collect();
            let fit = degree as usize + 1;
            let p = interpolate(&xs[..fit], &ys[..fit]);
            for (x, y) in xs[fit..].iter().zip(&ys[fit..]) {
                if p.substitute(Var::M, &Poly::int(*x)) != *y {
                    continue 'period;
                }
            }
            residues.push(p);
        }
        return Ok(QuasiPolynomial { period, residues });
    }
    Err(Error::FitFailure { max_period, degree })
}

/// Natural degree in `m` of `χ(E_{order,m})` in dimension 3.
pub fn natural_degree(order: u8) -> u32 {
    if order == 3 {
        9
    } else {
        7
    }
}

/// Fits `m ↦ chi_jets(v, order, m)` and returns the `m^degree` coefficient.
pub fn fit_leading(v: &VarietySpec, order: u8, degree: u32) -> Result<(QuasiPolynomial, Poly)> {
    check_order(order)?;
    let qp = fit_quasi_polynomial(|m| chi_jets(v, order, m), degree, MAX_PERIOD)?;
    let lead = qp.coefficient(degree)?;
    Ok((qp, lead))
}

/// Number of pieces' ranks summed, as a check on the fitting machinery.
pub fn total_rank(order: u8, m: u64) -> Result<BigInt> {
    let dec = decompose(order, m)?;
    dec.pieces
        .iter()
        .map(|p| crate::combinat::schur_rank_partition(&p.lambda, 3))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(p: &JetPiece) -> Vec<u32> {
        p.lambda.padded(3)
    }

    #[test]
    fn gr3_small() {
        let d = decompose_gr3(1).unwrap();
        assert_eq!(d.pieces.len(), 1);
        assert_eq!(lam(&d.pieces[0]), vec![1, 0, 0]);
        let d = decompose_gr3(5).unwrap();
        let got: Vec<(u64, Vec<u32>)> = d.pieces.iter().map(|p| (p.gamma, lam(p))).collect();
        assert_eq!(
            got,
            vec![(0, vec![5, 0, 0]), (0, vec![3, 1, 0]), (1, vec![2, 1, 0])]
        );
        assert!(decompose_gr3(0).is_err());
    }

    #[test]
    fn gr3_brute_force() {
        for m in 1..=30u64 {
            let mut brute = Vec::new();
            for gamma in 0..=m / 5 {
                for l1 in 0..=m {
                    for l2 in 0..=l1 {
                        for l3 in 0..=l2 {
                            if l1 + 2 * l2 + 3 * l3 == m - gamma
                                && l1 - l2 >= gamma
                                && l2 - l3 >= gamma
                            {
                                brute.push((gamma, [l1, l2, l3]));
                            }
                        }
                    }
                }
            }
            brute.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
            let got: Vec<(u64, [u64; 3])> = decompose_gr3(m)
                .unwrap()
                .pieces
                .iter()
                .map(|p| (p.gamma, p.parts3()))
                .collect();
            assert_eq!(got, brute, "m = {}", m);
        }
    }

    #[test]
    fn gr2_small() {
        let l = |m| {
            decompose_gr2(m)
                .unwrap()
                .pieces
                .iter()
                .map(lam)
                .collect::<Vec<_>>()
        };
        assert_eq!(l(1), vec![vec![1, 0, 0]]);
        assert_eq!(l(2), vec![vec![2, 0, 0]]);
        assert_eq!(l(3), vec![vec![3, 0, 0], vec![1, 1, 0]]);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let qp =
            fit_quasi_polynomial(|m| Ok(Poly::int((m * m * m + (m % 2)) as i64)), 3, 10).unwrap();
        assert_eq!(qp.period, 2);
        assert_eq!(qp.coefficient(3).unwrap(), Poly::one());
        assert_eq!(qp.eval(101), Poly::int(101 * 101 * 101 + 1));
    }

    #[test]
    fn fit_failure_is_reported() {
        let r = fit_quasi_polynomial(|m| Ok(Poly::int(1 << m.min(40))), 2, 3);
        assert!(matches!(r, Err(Error::FitFailure { .. })));
    }
}
