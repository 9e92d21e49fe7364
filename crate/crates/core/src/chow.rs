//! Intersection rings of P^n, hypersurfaces and log pairs, Chern and Todd
//! classes, and the two Euler-characteristic engines: Hirzebruch-Riemann-Roch
//! through weight enumeration, and a closed form pushed forward from the full
//! flag bundle of a rank-3 bundle.
//!
//! Every class is a polynomial in the hyperplane class `h` whose coefficients
//! are polynomials in the degree `d`, so one computation serves all degrees.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinat::{weights_of, Partition, SchurWeight};
use crate::error::{Error, Result};
use crate::poly::{qi, Monomial, Poly, Rational, Var, NVARS};
use crate::symfunc::substitute_elementary;

/// Degree of a hypersurface or boundary divisor: symbolic `d` or a number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Degree {
    Symbolic,
    Fixed(i64),
}

impl Degree {
    pub fn as_poly(&self) -> Poly {
        match self {
            Degree::Symbolic => Poly::var(Var::D),
            Degree::Fixed(n) => Poly::int(*n),
        }
    }

    /// Specializes `p` (a polynomial possibly in `d`) to this degree.
    pub fn specialize(&self, p: &Poly) -> Poly {
        match self {
            Degree::Symbolic => p.clone(),
            Degree::Fixed(n) => p.eval_var(Var::D, &qi(*n)),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Symbolic => write!(f, "d"),
            Degree::Fixed(n) => write!(f, "{}", n),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarietySpec {
    ProjectiveSpace(u8),
    /// Smooth hypersurface of the given degree in `P^ambient`.
    HypersurfaceIn {
        ambient: u8,
        degree: Degree,
    },
    /// `(P^3, X)` with `X` a smooth surface of the given degree.
    LogPair {
        degree: Degree,
    },
}

impl VarietySpec {
    pub fn projective_space(n: u8) -> Result<Self> {
        check_ambient(n)?;
        Ok(VarietySpec::ProjectiveSpace(n))
    }

    pub fn hypersurface(ambient: u8, degree: Degree) -> Result<Self> {
        check_ambient(ambient)?;
        check_degree(degree)?;
        Ok(VarietySpec::HypersurfaceIn { ambient, degree })
    }

    pub fn log_pair(degree: Degree) -> Result<Self> {
        check_degree(degree)?;
        Ok(VarietySpec::LogPair { degree })
    }

    /// Dimension of the variety carrying the sheaves.
    pub fn dim(&self) -> u32 {
        match self {
            VarietySpec::ProjectiveSpace(n) => *n as u32,
            VarietySpec::HypersurfaceIn { ambient, .. } => *ambient as u32 - 1,
            VarietySpec::LogPair { .. } => 3,
        }
    }

    pub fn degree(&self) -> Option<Degree> {
        match self {
            VarietySpec::ProjectiveSpace(_) => None,
            VarietySpec::HypersurfaceIn { degree, .. } | VarietySpec::LogPair { degree } => {
                Some(*degree)
            }
        }
    }

    /// `∫ h^dim`.
    pub fn top_intersection(&self) -> Poly {
        match self {
            VarietySpec::HypersurfaceIn { degree, .. } => degree.as_poly(),
            _ => Poly::one(),
        }
    }

    pub fn with_degree(&self, degree: Degree) -> VarietySpec {
        match self {
            VarietySpec::ProjectiveSpace(n) => VarietySpec::ProjectiveSpace(*n),
            VarietySpec::HypersurfaceIn { ambient, .. } => VarietySpec::HypersurfaceIn {
                ambient: *ambient,
                degree,
            },
            VarietySpec::LogPair { .. } => VarietySpec::LogPair { degree },
        }
    }

    /// Deterministic serialization, used as a cache key.
    pub fn canonical(&self) -> String {
        match self {
            VarietySpec::ProjectiveSpace(n) => format!("p{}", n),
            VarietySpec::HypersurfaceIn { ambient, degree } => {
                format!("hypersurface:n={}:d={}", ambient, degree)
            }
            VarietySpec::LogPair { degree } => format!("logpair:n=3:d={}", degree),
        }
    }

    /// Rank-3 cotangent-type atom used by the flag-bundle engine.
    pub fn cotangent_atom(&self) -> Result<Atom> {
        match self {
            VarietySpec::ProjectiveSpace(3) | VarietySpec::HypersurfaceIn { ambient: 4, .. } => {
                Ok(Atom::CotangentX)
            }
            VarietySpec::LogPair { .. } => Ok(Atom::LogCotangent),
            other => Err(Error::Precondition(format!(
                "{} has no rank-3 cotangent bundle",
                other
            ))),
        }
    }
}

fn check_ambient(n: u8) -> Result<()> {
    if n == 3 || n == 4 {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "ambient dimension {} not in {{3,4}}",
            n
        )))
    }
}

fn check_degree(d: Degree) -> Result<()> {
    match d {
        Degree::Fixed(n) if n < 1 => Err(Error::Precondition(format!("degree {} < 1", n))),
        _ => Ok(()),
    }
}

impl fmt::Display for VarietySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

/// Element of the Chow ring `Q[d][h] / (h^{dim+1})` of a variety.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowClass {
    variety: VarietySpec,
    poly: Poly,
}

impl ChowClass {
    pub fn new(variety: &VarietySpec, poly: Poly) -> Self {
        let poly = poly.truncate(&[Var::H], variety.dim());
        ChowClass {
            variety: variety.clone(),
            poly,
        }
    }

    pub fn zero(variety: &VarietySpec) -> Self {
        ChowClass::new(variety, Poly::zero())
    }

    pub fn one(variety: &VarietySpec) -> Self {
        ChowClass::new(variety, Poly::one())
    }

    /// `c * h`.
    pub fn hyperplane_multiple(variety: &VarietySpec, c: &Poly) -> Self {
        ChowClass::new(variety, c * &Poly::var(Var::H))
    }

    pub fn variety(&self) -> &VarietySpec {
        &self.variety
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    /// Coefficient of `h^k`, a polynomial in `d`.
    pub fn component(&self, k: u32) -> Poly {
        self.poly.coefficient_of(Var::H, k as u8)
    }

    /// Degree-`k` part as a class.
    pub fn graded(&self, k: u32) -> ChowClass {
        ChowClass::new(&self.variety, self.poly.homogeneous_part(&[Var::H], k))
    }

    pub fn add(&self, other: &ChowClass) -> Result<ChowClass> {
        self.check(other)?;
        Ok(ChowClass::new(&self.variety, &self.poly + &other.poly))
    }

    pub fn sub(&self, other: &ChowClass) -> Result<ChowClass> {
        self.check(other)?;
        Ok(ChowClass::new(&self.variety, &self.poly - &other.poly))
    }

    pub fn mul(&self, other: &ChowClass) -> Result<ChowClass> {
        self.check(other)?;
        Ok(ChowClass {
            variety: self.variety.clone(),
            poly: self
                .poly
                .mul_truncated(&other.poly, &[Var::H], self.variety.dim()),
        })
    }

    pub fn scale(&self, c: &Rational) -> ChowClass {
        ChowClass::new(&self.variety, self.poly.scale(c))
    }

    fn check(&self, other: &ChowClass) -> Result<()> {
        if self.variety != other.variety {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    /// Truncated exponential; the truncation order is the ring's dimension.
    pub fn exp(&self) -> ChowClass {
        let dim = self.variety.dim();
        let mut term = Poly::one();
        let mut out = Poly::one();
        for k in 1..=dim {
            term = term
                .mul_truncated(&self.poly, &[Var::H], dim)
                .scale(&Rational::new(BigInt::one(), k.into()));
            out += &term;
        }
        ChowClass::new(&self.variety, out)
    }

    /// Inverse of a class with constant term 1.
    pub fn inverse(&self) -> Result<ChowClass> {
        if self.component(0) != Poly::one() {
            return Err(Error::Precondition("inverse needs constant term 1".into()));
        }
        let dim = self.variety.dim();
        let nil = &Poly::one() - &self.poly;
        let mut out = Poly::one();
        let mut power = Poly::one();
        for _ in 1..=dim {
            power = power.mul_truncated(&nil, &[Var::H], dim);
            out += &power;
        }
        Ok(ChowClass::new(&self.variety, out))
    }

    /// Degree of the top-dimensional part.
    pub fn integrate(&self) -> Poly {
        &self.component(self.variety.dim()) * &self.variety.top_intersection()
    }
}

/// Base bundles from which bundle expressions are built.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    CotangentX,
    TangentX,
    AmbientCotangentRestricted,
    AmbientTangentRestricted,
    LogCotangent,
    LogTangent,
}

impl Atom {
    pub fn dual(self) -> Atom {
        match self {
            Atom::CotangentX => Atom::TangentX,
            Atom::TangentX => Atom::CotangentX,
            Atom::AmbientCotangentRestricted => Atom::AmbientTangentRestricted,
            Atom::AmbientTangentRestricted => Atom::AmbientCotangentRestricted,
            Atom::LogCotangent => Atom::LogTangent,
            Atom::LogTangent => Atom::LogCotangent,
        }
    }

    fn is_cotangent(self) -> bool {
        matches!(
            self,
            Atom::CotangentX | Atom::AmbientCotangentRestricted | Atom::LogCotangent
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            Atom::CotangentX => "cotangent",
            Atom::TangentX => "tangent",
            Atom::AmbientCotangentRestricted => "ambient-cotangent",
            Atom::AmbientTangentRestricted => "ambient-tangent",
            Atom::LogCotangent => "log-cotangent",
            Atom::LogTangent => "log-tangent",
        }
    }

    pub fn from_name(s: &str) -> Option<Atom> {
        [
            Atom::CotangentX,
            Atom::TangentX,
            Atom::AmbientCotangentRestricted,
            Atom::AmbientTangentRestricted,
            Atom::LogCotangent,
            Atom::LogTangent,
        ]
        .into_iter()
        .find(|a| a.name() == s)
    }

    pub fn rank(self, v: &VarietySpec) -> Result<usize> {
        let mismatch = || Error::AtomMismatch {
            atom: self.name().into(),
            variety: v.canonical(),
        };
        match (self, v) {
            (Atom::CotangentX | Atom::TangentX, _) => Ok(v.dim() as usize),
            (
                Atom::AmbientCotangentRestricted | Atom::AmbientTangentRestricted,
                VarietySpec::HypersurfaceIn { ambient, .. },
            ) => Ok(*ambient as usize),
            (Atom::LogCotangent | Atom::LogTangent, VarietySpec::LogPair { .. }) => Ok(3),
            _ => Err(mismatch()),
        }
    }
}

/// Line-bundle twist `O(constant + per_degree * d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Twist {
    pub constant: i64,
    pub per_degree: i64,
}

impl Twist {
    pub fn new(constant: i64) -> Self {
        Twist {
            constant,
            per_degree: 0,
        }
    }

    pub fn with_degree(constant: i64, per_degree: i64) -> Self {
        Twist {
            constant,
            per_degree,
        }
    }

    pub fn as_poly(&self, v: &VarietySpec) -> Poly {
        let deg = v.degree().map(|d| d.as_poly()).unwrap_or_else(Poly::zero);
        &Poly::int(self.constant) + &deg.scale(&qi(self.per_degree))
    }

    pub fn is_zero(&self) -> bool {
        self.constant == 0 && self.per_degree == 0
    }
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.constant, self.per_degree) {
            (c, 0) => write!(f, "{}", c),
            (0, k) => write!(f, "{}d", k),
            (c, k) => write!(f, "{}{:+}d", c, k),
        }
    }
}

/// Formal bundle expression.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BundleExpr {
    Line(Twist),
    Atom(Atom),
    Dual(Atom),
    Schur(SchurWeight, Atom),
    Twist(Box<BundleExpr>, Twist),
    Sum(Vec<BundleExpr>),
}

impl BundleExpr {
    pub fn line(t: i64) -> Self {
        BundleExpr::Line(Twist::new(t))
    }

    pub fn schur(weight: &[i64], atom: Atom) -> Result<Self> {
        Ok(BundleExpr::Schur(SchurWeight::new(weight.to_vec())?, atom))
    }

    pub fn schur_partition(p: &Partition, len: usize, atom: Atom) -> Self {
        BundleExpr::Schur(SchurWeight::from_partition(p, len), atom)
    }

    pub fn twisted(self, t: Twist) -> Self {
        if t.is_zero() {
            self
        } else {
            BundleExpr::Twist(Box::new(self), t)
        }
    }

    /// Deterministic serialization; summands are sorted so that the result is
    /// independent of their order.
    pub fn canonical(&self) -> String {
        match self {
            BundleExpr::Line(t) => format!("O({})", t),
            BundleExpr::Atom(a) => a.name().to_string(),
            BundleExpr::Dual(a) => format!("dual({})", a.name()),
            BundleExpr::Schur(w, a) => {
                let e: Vec<String> = w.entries().iter().map(|x| x.to_string()).collect();
                format!("schur({}):{}", e.join(","), a.name())
            }
            BundleExpr::Twist(e, t) => format!("{}*O({})", e.canonical(), t),
            BundleExpr::Sum(es) => {
                let mut parts: Vec<String> = es.iter().map(|e| e.canonical()).collect();
                parts.sort();
                format!("sum[{}]", parts.join(";"))
            }
        }
    }

    pub fn rank(&self, v: &VarietySpec) -> Result<BigInt> {
        match self {
            BundleExpr::Line(_) => Ok(BigInt::one()),
            BundleExpr::Atom(a) | BundleExpr::Dual(a) => Ok(BigInt::from(a.rank(v)?)),
            BundleExpr::Schur(w, a) => crate::combinat::schur_rank(w, a.rank(v)?),
            BundleExpr::Twist(e, _) => e.rank(v),
            BundleExpr::Sum(es) => es.iter().map(|e| e.rank(v)).sum(),
        }
    }
}

impl fmt::Display for BundleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

/// Total Chern class of an atom, truncated at the dimension.
pub fn chern_total(v: &VarietySpec, atom: Atom) -> Result<ChowClass> {
    atom.rank(v)?;
    let h = Poly::var(Var::H);
    let one = Poly::one();
    let deg = v.degree().map(|d| d.as_poly());
    let power = |base: &Poly, n: u32| ChowClass::new(v, base.pow(n));
    let tangent_type = match (atom, v) {
        (Atom::CotangentX | Atom::TangentX, VarietySpec::ProjectiveSpace(n)) => {
            power(&(&one + &h), *n as u32 + 1)
        }
        (Atom::CotangentX | Atom::TangentX, VarietySpec::LogPair { .. }) => power(&(&one + &h), 4),
        (Atom::CotangentX | Atom::TangentX, VarietySpec::HypersurfaceIn { ambient, .. }) => {
            // 0 -> T_X -> T_P|X -> O_X(d) -> 0
            let normal = ChowClass::new(v, &one + &(&deg.clone().unwrap() * &h));
            power(&(&one + &h), *ambient as u32 + 1).mul(&normal.inverse()?)?
        }
        (
            Atom::AmbientCotangentRestricted | Atom::AmbientTangentRestricted,
            VarietySpec::HypersurfaceIn { ambient, .. },
        ) => power(&(&one + &h), *ambient as u32 + 1),
        (Atom::LogCotangent | Atom::LogTangent, VarietySpec::LogPair { .. }) => {
            // 0 -> Ω_P3 -> Ω_P3(log X) -> O_X -> 0 and c(O_X) = 1/(1 - d h);
            // expressed here for the log tangent bundle.
            let residue = ChowClass::new(v, &one + &(&deg.clone().unwrap() * &h));
            power(&(&one + &h), 4).mul(&residue.inverse()?)?
        }
        _ => unreachable!("rank() rejected the combination"),
    };
    Ok(if atom.is_cotangent() {
        dualize(&tangent_type)
    } else {
        tangent_type
    })
}

/// Flips the sign of odd-degree components.
fn dualize(c: &ChowClass) -> ChowClass {
    let mut out = Poly::zero();
    for (m, coef) in c.poly().terms() {
        let sign = if m[Var::H.index()] % 2 == 1 {
            -coef.clone()
        } else {
            coef.clone()
        };
        out.add_term(*m, sign);
    }
    ChowClass::new(c.variety(), out)
}

/// Chern classes `c_1..c_rank` of an atom as polynomials in `h` and `d`.
pub fn chern_classes(v: &VarietySpec, atom: Atom) -> Result<Vec<Poly>> {
    let total = chern_total(v, atom)?;
    let r = atom.rank(v)?;
    Ok((1..=r as u32)
        .map(|k| total.graded(k).poly().clone())
        .collect())
}

/// Chern character of a Schur bundle from its weight multiset: the moments
/// `sum_mu (mu . a)^k / k!` are rewritten in the elementary symmetric
/// functions of the formal roots `a`, which become Chern classes.
fn schur_chern_character(v: &VarietySpec, w: &SchurWeight, atom: Atom) -> Result<ChowClass> {
    let r = atom.rank(v)?;
    if w.len() > r {
        return Err(Error::UndefinedFunctor {
            weight: w.entries().to_vec(),
            rank: r,
        });
    }
    let weights = weights_of(w, r)?;
    let dim = v.dim();
    let roots = &Var::ROOTS[..r];

    // Aggregate moment tensors: M_alpha = sum mult * mu^alpha, |alpha| <= dim.
    let exps = exponent_vectors(r, dim);
    let mut moments: Vec<BigInt> = vec![BigInt::zero(); exps.len()];
    for (mu, mult) in &weights {
        let mult = BigInt::from(*mult);
        for (slot, alpha) in moments.iter_mut().zip(&exps) {
            let mut term = mult.clone();
            for (i, &e) in alpha.iter().enumerate() {
                for _ in 0..e {
                    term *= mu[i];
                }
            }
            *slot += term;
        }
    }
    // sum_mu (mu.a)^k / k! = sum_{|alpha|=k} M_alpha a^alpha / alpha!
    let mut ch = Poly::zero();
    for (m, alpha) in moments.iter().zip(&exps) {
        let denom: BigInt = alpha.iter().map(|&e| factorial_big(e)).product();
        let mut mon: Monomial = [0; NVARS];
        for (i, &e) in alpha.iter().enumerate() {
            mon[roots[i].index()] = e as u8;
        }
        ch.add_term(mon, Rational::new(m.clone(), denom));
    }
    let chern = chern_classes(v, atom)?;
    let poly = substitute_elementary(&ch, roots, &chern)?;
    Ok(ChowClass::new(v, poly))
}

fn factorial_big(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * k)
}

/// All exponent vectors of length `r` with total degree at most `max`.
pub(crate) fn exponent_vectors(r: usize, max: u32) -> Vec<Vec<u32>> {
    fn rec(r: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(r, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(r, max, &mut Vec::new(), &mut out);
    out
}

/// Chern character of a bundle expression.
pub fn chern_character(v: &VarietySpec, e: &BundleExpr) -> Result<ChowClass> {
    match e {
        BundleExpr::Line(t) => Ok(ChowClass::hyperplane_multiple(v, &t.as_poly(v)).exp()),
        BundleExpr::Atom(a) => schur_chern_character(v, &SchurWeight::new(vec![1])?, *a),
        BundleExpr::Dual(a) => schur_chern_character(v, &SchurWeight::new(vec![1])?, a.dual()),
        BundleExpr::Schur(w, a) => schur_chern_character(v, w, *a),
        BundleExpr::Twist(inner, t) => {
            chern_character(v, inner)?.mul(&ChowClass::hyperplane_multiple(v, &t.as_poly(v)).exp())
        }
        BundleExpr::Sum(es) => es.iter().try_fold(ChowClass::zero(v), |acc, e| {
            acc.add(&chern_character(v, e)?)
        }),
    }
}

/// Todd class of the tangent bundle of the variety carrying the sheaves
/// (`X` for hypersurfaces, `P^3` for log pairs).
pub fn todd_class(v: &VarietySpec) -> Result<ChowClass> {
    let c = chern_classes(v, Atom::TangentX)?;
    let get = |k: usize| c.get(k - 1).cloned().unwrap_or_else(Poly::zero);
    let (c1, c2, c3, c4) = (get(1), get(2), get(3), get(4));
    let cls = |p: Poly| ChowClass::new(v, p);
    let mut td = Poly::one();
    td += &c1.scale(&Rational::new(1.into(), 2.into()));
    td += &(&(&c1 * &c1) + &c2).scale(&Rational::new(1.into(), 12.into()));
    td += &(&c1 * &c2).scale(&Rational::new(1.into(), 24.into()));
    // (-c1^4 + 4 c1^2 c2 + 3 c2^2 + c1 c3 - c4) / 720
    let c1sq = &c1 * &c1;
    let mut deg4 = -(&c1sq * &c1sq);
    deg4 += &(&c1sq * &c2).scale(&qi(4));
    deg4 += &(&c2 * &c2).scale(&qi(3));
    deg4 += &(&c1 * &c3);
    deg4 -= &c4;
    td += &deg4.scale(&Rational::new(1.into(), 720.into()));
    Ok(cls(td))
}

type ChiCacheMap = HashMap<String, Poly>;

/// Memo for Euler characteristics; concurrent reads, serialized writes.
fn chi_cache() -> &'static RwLock<ChiCacheMap> {
    static CACHE: OnceLock<RwLock<ChiCacheMap>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `χ(v, e) = ∫ ch(e) td(v)`, a polynomial in `d`.
pub fn euler_characteristic(v: &VarietySpec, e: &BundleExpr) -> Result<Poly> {
    let key = format!("{}|{}", v.canonical(), e.canonical());
    if let Some(hit) = chi_cache().read().expect("cache poisoned").get(&key) {
        return Ok(hit.clone());
    }
    let chi = chern_character(v, e)?.mul(&todd_class(v)?)?.integrate();
    chi_cache()
        .write()
        .expect("cache poisoned")
        .entry(key)
        .or_insert_with(|| chi.clone());
    Ok(chi)
}

// ---------------------------------------------------------------------------
// Flag-bundle engine
// ---------------------------------------------------------------------------

const FLAG_ROOTS: [Var; 3] = [Var::A1, Var::A2, Var::A3];

/// Divided difference `(f - s_i f) / (a_i - a_{i+1})` on the roots.
pub fn divided_difference(f: &Poly, i: usize) -> Poly {
    let (x, y) = (FLAG_ROOTS[i].index(), FLAG_ROOTS[i + 1].index());
    let mut out = Poly::zero();
    for (m, c) in f.terms() {
        let (p, q) = (m[x], m[y]);
        if p == q {
            continue;
        }
        // a^p b^q - a^q b^p = (a^lo b^lo)(a^k - b^k) * sign, k = |p - q|
        let (lo, k, sign) = if p > q {
            (q, p - q, c.clone())
        } else {
            (p, q - p, -c.clone())
        };
        for j in 0..k {
            let mut nm = *m;
            nm[x] = lo + j;
            nm[y] = lo + k - 1 - j;
            out.add_term(nm, sign.clone());
        }
    }
    out
}

/// Pushforward from the full flag bundle of a rank-3 bundle:
/// `∂_1 ∂_2 ∂_1`, normalized so that `a1^2 a2 ↦ 1`.
pub fn flag_pushforward(f: &Poly) -> Poly {
    divided_difference(&divided_difference(&divided_difference(f, 0), 1), 0)
}

/// Todd series `x / (1 - e^{-x})` up to degree `n` (Bernoulli numbers).
fn todd_series(n: u32) -> Vec<Rational> {
    // Coefficients b_k of x/(1-e^{-x}) = sum b_k x^k satisfy
    // sum_{j=0}^{k} b_j * (-1)^{k-j} / (k-j+1)! = [k == 0].
    let mut b: Vec<Rational> = Vec::new();
    for k in 0..=n as usize {
        let mut acc = if k == 0 {
            Rational::one()
        } else {
            Rational::zero()
        };
        for (j, bj) in b.iter().enumerate() {
            let sign = if (k - j) % 2 == 0 { 1 } else { -1 };
            acc -= bj * Rational::new(sign.into(), factorial_big((k - j + 1) as u32));
        }
        b.push(acc);
    }
    b
}

type MasterCache = HashMap<VarietySpec, Arc<Poly>>;

fn master_cache() -> &'static RwLock<MasterCache> {
    static CACHE: OnceLock<RwLock<MasterCache>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `χ(v, Γ^λ V ⊗ O(t))` for the rank-3 cotangent-type bundle `V` of `v`, as a
/// polynomial in `l1, l2, l3, t` (and `d`).
///
/// Computed on the flag bundle: `ch(L^λ) = e^{λ·a}`, relative Todd class from
/// the roots `a_i - a_j (i < j)`, pushed forward by divided differences and
/// rewritten through `e_k(a) = c_k(V)`.
pub fn flag_chi_master(v: &VarietySpec) -> Result<Arc<Poly>> {
    if let Some(hit) = master_cache().read().expect("cache poisoned").get(v) {
        return Ok(hit.clone());
    }
    let atom = v.cotangent_atom()?;
    let dim = v.dim();
    let top = dim + 3;
    let graded: Vec<Var> = vec![Var::A1, Var::A2, Var::A3, Var::H];

    // exp(λ·a + t h), truncated at the flag bundle's dimension.
    let linear: Poly = [
        (Var::L1, Var::A1),
        (Var::L2, Var::A2),
        (Var::L3, Var::A3),
        (Var::T, Var::H),
    ]
    .iter()
    .map(|&(coef, root)| &Poly::var(coef) * &Poly::var(root))
    .fold(Poly::zero(), |a, b| a + b);
    let mut exp = Poly::one();
    let mut term = Poly::one();
    for k in 1..=top {
        term = term
            .mul_truncated(&linear, &graded, top)
            .scale(&Rational::new(1.into(), k.into()));
        exp += &term;
    }

    // Relative Todd class.
    let td = todd_series(top);
    let mut rel = Poly::one();
    for (i, &ai) in FLAG_ROOTS.iter().enumerate() {
        for &aj in &FLAG_ROOTS[i + 1..] {
            let root = &Poly::var(ai) - &Poly::var(aj);
            let mut series = Poly::zero();
            let mut power = Poly::one();
            for b in &td {
                series += &power.scale(b);
                power = power.mul_truncated(&root, &graded, top);
            }
            rel = rel.mul_truncated(&series, &graded, top);
        }
    }

    let base_td = todd_class(v)?;
    let integrand =
        exp.mul_truncated(&rel, &graded, top)
            .mul_truncated(base_td.poly(), &graded, top);
    // Only the part of total degree exactly `top` survives integration.
    let integrand = integrand.homogeneous_part(&graded, top);
    let pushed = flag_pushforward(&integrand);
    let chern = chern_classes(v, atom)?;
    let on_base = substitute_elementary(&pushed, &FLAG_ROOTS, &chern)?;
    let chi = ChowClass::new(v, on_base).integrate();
    let chi = Arc::new(chi);
    master_cache()
        .write()
        .expect("cache poisoned")
        .entry(v.clone())
        .or_insert_with(|| chi.clone());
    Ok(chi)
}

/// Closed-form `χ(v, Γ^λ V ⊗ O(t))` with `t = u · λ` substituted.
pub fn flag_chi_closed_form(
    v: &VarietySpec,
    twist_multiple_of_lambda: [Rational; 3],
) -> Result<Poly> {
    let master = flag_chi_master(v)?;
    let t: Poly = Var::LAMBDA
        .iter()
        .zip(&twist_multiple_of_lambda)
        .map(|(&l, u)| Poly::var(l).scale(u))
        .fold(Poly::zero(), |a, b| a + b);
    Ok(master.substitute(Var::T, &t))
}

/// Whether `F ⊗ K_Y^{-1}` is positive on the flag bundle: `|λ| > 4(d-5)+18`
/// (compact) or `|λ| > 3d+2` (log).
pub fn flag_positivity_condition(lambda: &Partition, d: i64, log: bool) -> bool {
    let size = lambda.size() as i64;
    size > flag_positivity_bound(d, log)
}

pub fn flag_positivity_bound(d: i64, log: bool) -> i64 {
    if log {
        3 * d + 2
    } else {
        4 * (d - 5) + 18
    }
}
