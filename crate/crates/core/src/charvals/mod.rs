//! Character data for GL_n(F_q) restricted to what the factorization counts
//! need: q-hook polynomials, hook-shape degrees, normalized values on
//! reflection class sums, and the Frobenius character sum itself.

mod partition;

pub use partition::Partition;

use crate::error::{Error, Result};
use crate::gf::{build_field_for_order, PolyRing};
use crate::qformula::{
    cyclotomic_orbit_sum, gl_order_poly, q_binom, q_int, qq, root_sum, IdentityReport, QPoly, RatFunc,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlambdaRoute {
    /// `(q;q)_n q^n(lambda) / prod_a (1 - q^h(a))`.
    Product,
    /// `(q;q)_n s_lambda(1, q, q^2, ...)` through a Jacobi-Trudi determinant.
    JacobiTrudi,
    /// Sum of `q^maj(Q)` over standard Young tableaux.
    MajSum,
}

impl FlambdaRoute {
    pub const ALL: [FlambdaRoute; 3] = [FlambdaRoute::Product, FlambdaRoute::JacobiTrudi, FlambdaRoute::MajSum];
}

pub fn f_lambda(lambda: &Partition, route: FlambdaRoute) -> Result<QPoly> {
    let n = lambda.size();
    if n == 0 {
        return Err(Error::Invalid("f_lambda needs a nonempty partition".into()));
    }
    match route {
        FlambdaRoute::Product => {
            let den: QPoly = lambda
                .hook_lengths()
                .iter()
                .map(|&h| QPoly::one() - QPoly::monomial(1, h as i64))
                .product();
            (&qq(n as u64) * &QPoly::monomial(1, lambda.n_stat() as i64))
                .div_exact(&den)
                .ok_or_else(|| Error::Internal(format!("hook product does not divide for {lambda:?}")))
        }
        FlambdaRoute::JacobiTrudi => jacobi_trudi(lambda),
        FlambdaRoute::MajSum => Ok(lambda
            .syt_majors()
            .into_iter()
            .map(|m| QPoly::monomial(1, m as i64))
            .sum()),
    }
}

/// All three routes, failing unless they coincide.
pub fn f_lambda_checked(lambda: &Partition) -> Result<QPoly> {
    let v = FlambdaRoute::ALL
        .iter()
        .map(|&r| f_lambda(lambda, r))
        .collect::<Result<Vec<_>>>()?;
    if v[0] != v[1] || v[0] != v[2] {
        return Err(Error::RouteMismatch(format!(
            "f^{:?}: product={}, principal={}, maj={}",
            lambda.parts(),
            v[0],
            v[1],
            v[2]
        )));
    }
    Ok(v.into_iter().next().expect("three routes"))
}

/// Jacobi-Trudi: `s_lambda = det[h_(lambda_i - i + j)]` with
/// `h_r(1, q, ...) = 1/(q;q)_r`, or the dual `det[e_(lambda'_i - i + j)]` with
/// `e_r(1, q, ...) = q^C(r,2)/(q;q)_r`, whichever has fewer rows. Row `i` is
/// scaled by `(q;q)_(mu_i - i + L)` so every entry becomes a polynomial.
fn jacobi_trudi(lambda: &Partition) -> Result<QPoly> {
    let conj = lambda.conjugate();
    let (mu, dual) = if conj.len() < lambda.len() { (conj, true) } else { (lambda.clone(), false) };
    let rows = mu.len();
    let top = |i: usize| mu.parts()[i] as i64 - i as i64 + rows as i64 - 1;
    let mut m: Vec<Vec<QPoly>> = Vec::with_capacity(rows);
    for i in 0..rows {
        let hi = top(i);
        let row = (0..rows)
            .map(|j| {
                let r = mu.parts()[i] as i64 - i as i64 + j as i64;
                if r < 0 {
                    return QPoly::zero();
                }
                // (q;q)_hi / (q;q)_r = prod_{t=r+1}^{hi} (1 - q^t)
                let mut e: QPoly = (r + 1..=hi).map(|t| QPoly::one() - QPoly::monomial(1, t)).product();
                if dual {
                    e = e.shift(r * (r - 1) / 2);
                }
                e
            })
            .collect();
        m.push(row);
    }
    let det = bareiss_det(m)?;
    let scale: QPoly = (0..rows).map(|i| qq(top(i) as u64)).product();
    (&qq(lambda.size() as u64) * &det)
        .div_exact(&scale)
        .ok_or_else(|| Error::Internal(format!("Jacobi-Trudi scaling does not divide for {lambda:?}")))
}

/// Fraction-free determinant over `Z[q, q^-1]`.
fn bareiss_det(mut m: Vec<Vec<QPoly>>) -> Result<QPoly> {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = QPoly::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Ok(QPoly::zero());
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = v
                    .div_exact(&prev)
                    .ok_or_else(|| Error::Internal("Bareiss step is not exact".into()))?;
            }
        }
        prev = m[k][k].clone();
    }
    Ok(if n == 0 { QPoly::one() } else { m[n - 1][n - 1].scale(&sign) })
}

/// Degree of the primary character attached to a hook of `n/s`, as a sign
/// and the polynomial `q^(s C(k+1,2)) (q;q)_n / (q^s;q^s)_(n/s) [n/s - 1, k]_(q^s)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HookDegree {
    pub sign: i8,
    pub poly: QPoly,
}

impl HookDegree {
    pub fn signed(&self) -> QPoly {
        self.poly.scale(&BigInt::from(self.sign))
    }
}

pub fn hook_degree(n: u64, s: u64, k: u64) -> Result<HookDegree> {
    if s == 0 || n == 0 || n % s != 0 {
        return Err(Error::Invalid(format!("hook_degree needs s | n, got n={n}, s={s}")));
    }
    let r = n / s;
    if k >= r {
        return Err(Error::Invalid(format!("hook_degree needs k <= n/s - 1, got k={k}, n/s={r}")));
    }
    let si = s as i64;
    let num = &qq(n) * &q_binom(r - 1, k)?.subs_power(si);
    let poly = num
        .div_exact(&qq(r).subs_power(si))
        .ok_or_else(|| Error::Internal("(q^s;q^s)_(n/s) does not divide".into()))?
        .shift(si * (k * (k + 1) / 2) as i64);
    let sign = if (n - r) % 2 == 0 { 1 } else { -1 };
    Ok(HookDegree { sign, poly })
}

/// `sum_{mu = lambda - corner} f^mu / f^lambda = (1/[n]_q) sum_a q^c(a)`.
pub fn content_identity(lambda: &Partition) -> Result<bool> {
    let n = lambda.size();
    if n == 0 {
        return Err(Error::Invalid("content identity needs a nonempty partition".into()));
    }
    let fl = f_lambda(lambda, FlambdaRoute::Product)?;
    let mut lhs = RatFunc::zero();
    for mu in lambda.remove_corners() {
        let fm = if mu.size() == 0 { QPoly::one() } else { f_lambda(&mu, FlambdaRoute::Product)? };
        lhs = &lhs + &RatFunc::new(fm, fl.clone());
    }
    let contents: QPoly = lambda.contents().into_iter().map(|c| QPoly::monomial(1, c)).sum();
    let rhs = RatFunc::new(contents, q_int(n as u64));
    Ok(lhs == rhs)
}

/// Three-route agreement for `f^lambda` and the content identity over all `|lambda| <= max_n`.
pub fn charvals_suite(max_n: usize) -> Result<IdentityReport> {
    let mut witness = None;
    'outer: for n in 1..=max_n {
        for l in Partition::all(n) {
            if let Err(e) = f_lambda_checked(&l) {
                witness = Some(e.to_string());
                break 'outer;
            }
            if !content_identity(&l)? {
                witness = Some(format!("content identity fails for {:?}", l.parts()));
                break 'outer;
            }
        }
    }
    Ok(IdentityReport {
        check: "charvals".into(),
        params: json!({ "max_n": max_n }),
        pass: witness.is_none(),
        witness,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReflClass {
    /// Determinant `alpha = omega^e` with `e != 0 mod (q - 1)`, `omega` the field generator.
    Semisimple { det_exponent: u64 },
    Transvection,
}

/// `coeff * zeta^phase` with `zeta` a primitive `order`-th root of unity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassValue {
    pub coeff: QPoly,
    pub phase: u64,
    pub order: u64,
}

/// Normalized value `|class| chi(t) / chi(1)` of the hook character attached to
/// `(s, U, k)` on a reflection class sum. For `s = 1` the character `U` of
/// `F_q^x` is `U(omega^e) = zeta^(u e)` with `zeta` of order `q - 1 = order`.
pub fn class_sum_value(n: u64, s: u64, k: u64, class: ReflClass, u: u64, order: u64) -> Result<ClassValue> {
    if s == 0 || n % s != 0 || k >= n / s {
        return Err(Error::Invalid(format!("class_sum_value needs s | n and k < n/s, got n={n}, s={s}, k={k}")));
    }
    if order == 0 {
        return Err(Error::Invalid("root-of-unity order must be positive".into()));
    }
    let qn = q_int(n);
    let e = (n - k - 1) as i64;
    let (coeff, phase) = match (class, s) {
        (ReflClass::Semisimple { det_exponent }, 1) => {
            if det_exponent % order == 0 {
                return Err(Error::Invalid("a semisimple reflection has determinant != 1".into()));
            }
            (qn.shift(e), (u % order) * (det_exponent % order) % order)
        }
        (ReflClass::Semisimple { .. }, _) => (QPoly::zero(), 0),
        (ReflClass::Transvection, 1) => (&qn * &(QPoly::monomial(1, e) - QPoly::one()), 0),
        (ReflClass::Transvection, _) => (-&qn, 0),
    };
    Ok(ClassValue { coeff, phase, order })
}

/// Determinants of the non-transvection factors in a Frobenius count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SemisimpleDets {
    /// `r` factors whose determinants are only known to multiply to `det c`.
    ProductIsDetC(u64),
    /// Explicit exponents `e_i` with `alpha_i = omega^(e_i)`, each nonzero mod `q - 1`.
    Exponents(Vec<u64>),
}

/// The Frobenius count for a Singer cycle `c`: the sum over primary hook
/// characters `chi = chi^(U, (n/s - k, 1^k))` of
/// `deg(chi) chi(c^-1) prod_i normchi(z_(alpha_i)) / |GL_n|` with `m` of the
/// `alpha_i` equal to one and the remaining `ell - m` multiplying to `det c`.
/// For `q = 2` all reflections are transvections and `m = ell` is required.
pub fn frobenius_count(n: u64, q: u64, ell: u64, m: u64) -> Result<BigInt> {
    if q == 2 {
        if m != ell {
            return Err(Error::Invalid("over F_2 every reflection is a transvection, so m = ell".into()));
        }
    } else if m >= ell {
        return Err(Error::Invalid(format!(
            "for q > 2 the Singer determinant is not 1, so m <= ell - 1 (got ell={ell}, m={m})"
        )));
    }
    frobenius_sum(n, q, m, &SemisimpleDets::ProductIsDetC(ell - m))
}

/// The same character sum for an explicit determinant sequence: `m` leading
/// transvection factors followed by semisimple factors of the given exponents.
/// Sequences whose product is not `det c` give zero through the phase sum.
pub fn frobenius_count_dets(n: u64, q: u64, m: u64, exponents: &[u64]) -> Result<BigInt> {
    if q > 2 && exponents.iter().any(|&e| e % (q - 1) == 0) {
        return Err(Error::Invalid("semisimple determinants must differ from 1".into()));
    }
    frobenius_sum(n, q, m, &SemisimpleDets::Exponents(exponents.to_vec()))
}

/// `(-1)^n c_0` for the Singer polynomial, as an exponent of the field generator.
fn singer_det_exponent(n: u64, q: u64) -> Result<u64> {
    let field = build_field_for_order(q)?;
    let ring = PolyRing::new(&field);
    let singer = ring
        .smallest_primitive(n as usize)
        .ok_or_else(|| Error::Internal("no primitive polynomial".into()))?;
    let mut det_c = singer.coeff(0);
    if n % 2 == 1 {
        det_c = field.neg(det_c);
    }
    Ok(det_c.exponent().expect("a primitive polynomial has nonzero constant term") as u64)
}

fn frobenius_sum(n: u64, q: u64, m: u64, semis: &SemisimpleDets) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::Invalid(format!("needs n >= 2, got n={n}")));
    }
    let order = q - 1;
    let e_c = singer_det_exponent(n, q)?;
    let qb = BigInt::from(q);
    let at = |p: &QPoly| -> Result<BigInt> {
        p.eval_int(&qb)
            .ok_or_else(|| Error::Internal("negative power of q in a degree".into()))
    };
    let r = match semis {
        SemisimpleDets::ProductIsDetC(r) => *r,
        SemisimpleDets::Exponents(v) => v.len() as u64,
    };
    let sign = |e: u64| if e % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    let mut total = BigInt::zero();
    for s in (1..=n).filter(|s| n % s == 0) {
        for k in 0..n / s {
            let deg = at(&hook_degree(n, s, k)?.signed())?;
            if s == 1 {
                // chi^(U,hook)(c^-1) = (-1)^k U(det c)^-1; tally zeta-exponents over all U
                let mut coeff = BigInt::one();
                let mut tally = vec![BigInt::zero(); order as usize];
                for u in 0..order {
                    let mut c_u = BigInt::one();
                    let mut phase = (order - (u * e_c) % order) % order;
                    for _ in 0..m {
                        let v = class_sum_value(n, 1, k, ReflClass::Transvection, u, order)?;
                        c_u *= at(&v.coeff)?;
                        phase = (phase + v.phase) % order;
                    }
                    match semis {
                        SemisimpleDets::Exponents(es) => {
                            for &e in es {
                                let v = class_sum_value(n, 1, k, ReflClass::Semisimple { det_exponent: e }, u, order)?;
                                c_u *= at(&v.coeff)?;
                                phase = (phase + v.phase) % order;
                            }
                        }
                        SemisimpleDets::ProductIsDetC(r) => {
                            // the U-phases of the factors multiply to U(det c)
                            let v = q_int(n).shift((n - k - 1) as i64);
                            c_u *= at(&v)?.pow(*r as u32);
                            if *r > 0 {
                                phase = (phase + u * e_c) % order;
                            }
                        }
                    }
                    coeff = c_u;
                    tally[phase as usize] += 1;
                }
                let phases = root_sum(&tally).map_err(|v| Error::Internal(format!("phase sum {v:?} is not an integer")))?;
                total += &deg * sign(k) * coeff * phases;
            } else {
                let mut coeff = BigInt::one();
                for _ in 0..m {
                    coeff *= at(&class_sum_value(n, s, k, ReflClass::Transvection, 0, order)?.coeff)?;
                }
                for _ in 0..r {
                    coeff *= at(&class_sum_value(n, s, k, ReflClass::Semisimple { det_exponent: 1 }, 0, order)?.coeff)?;
                }
                if coeff.is_zero() {
                    continue;
                }
                // sum over U in C_s of chi(c^-1) is (-1)^(n - n/s - k) times the orbit
                // sum at the norm of c^-1, which generates F_(q^s)^x
                let orbit = cyclotomic_orbit_sum(q, s as u32, q.pow(s as u32) - 1)?;
                total += &deg * sign(n - n / s - k) * orbit * coeff;
            }
        }
    }
    let gl = at(&gl_order_poly(n))?;
    let (quo, rem) = total.div_rem(&gl);
    if !rem.is_zero() {
        return Err(Error::Internal(format!(
            "character sum {total} is not divisible by |GL_{n}(F_{q})| = {gl}"
        )));
    }
    Ok(quo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor_count::FactorCounter;
    use crate::gf::FqElem;
    use crate::glnq::GlGroup;
    use crate::qformula::{tq, tq_nlm_checked, TqRoute};

    #[test]
    fn small_f_lambda() {
        let p = |v: Vec<usize>| Partition::new(v);
        assert_eq!(f_lambda_checked(&p(vec![4])).unwrap(), QPoly::one());
        assert_eq!(f_lambda_checked(&p(vec![2, 1])).unwrap(), QPoly::from_i64s(&[0, 1, 1]));
        assert_eq!(f_lambda_checked(&p(vec![1, 1, 1, 1])).unwrap(), QPoly::monomial(1, 6));
        assert!(f_lambda(&p(vec![]), FlambdaRoute::Product).is_err());
    }

    #[test]
    fn routes_and_content_identity_through_six() {
        assert!(charvals_suite(6).unwrap().pass);
    }

    #[test]
    fn hook_degrees() {
        for n in 1..=6u64 {
            assert_eq!(hook_degree(n, 1, 0).unwrap().signed(), QPoly::one());
            assert_eq!(hook_degree(n, 1, n - 1).unwrap().signed(), QPoly::monomial(1, (n * (n - 1) / 2) as i64));
            for k in 0..n {
                let h = Partition::hook(n as usize, k as usize).unwrap();
                assert_eq!(hook_degree(n, 1, k).unwrap().signed(), f_lambda(&h, FlambdaRoute::Product).unwrap());
            }
        }
        let d = hook_degree(4, 2, 0).unwrap();
        assert_eq!(d.sign, 1);
        assert_eq!(d.poly, qq(4).div_exact(&qq(2).subs_power(2)).unwrap());
        assert!(hook_degree(4, 3, 0).is_err());
        assert!(hook_degree(4, 2, 2).is_err());
    }

    #[test]
    fn hook_degree_squares_fit_in_group_order() {
        for n in 2..=5u64 {
            for q in [2i64, 3, 4, 5] {
                let gl = gl_order_poly(n).eval_i64(q).unwrap();
                let sum: BigInt = (0..n)
                    .map(|k| hook_degree(n, 1, k).unwrap().signed().eval_i64(q).unwrap().pow(2))
                    .sum();
                assert!(sum <= gl);
            }
        }
    }

    #[test]
    fn trivial_character_gives_class_sizes() {
        for n in 2..=4u64 {
            for q in [2u64, 3, 4, 5] {
                let g = GlGroup::over(n as usize, q).unwrap();
                let census = g.enumerate_reflections(Some(FqElem::ONE)).len();
                let v = class_sum_value(n, 1, 0, ReflClass::Transvection, 0, q - 1).unwrap();
                assert_eq!(v.coeff.eval_u64(q), Some(census as u64));
                if q > 2 {
                    let semi = g.enumerate_reflections(Some(g.field().generator())).len();
                    let w = class_sum_value(n, 1, 0, ReflClass::Semisimple { det_exponent: 1 }, 0, q - 1).unwrap();
                    assert_eq!(w.coeff.eval_u64(q), Some(semi as u64));
                    assert_eq!(w.phase, 0);
                }
            }
        }
    }

    #[test]
    fn steinberg_values() {
        // St vanishes on transvections and takes value 1 on a semisimple reflection up to q^C(n,2)
        for n in 2..=5u64 {
            let t = class_sum_value(n, 1, n - 1, ReflClass::Transvection, 0, 4).unwrap();
            assert!(t.coeff.is_zero());
            let s = class_sum_value(n, 1, n - 1, ReflClass::Semisimple { det_exponent: 3 }, 1, 4).unwrap();
            assert_eq!(s.coeff, q_int(n));
            assert_eq!(s.phase, 3);
        }
    }

    #[test]
    fn higher_s_values() {
        let a = class_sum_value(4, 2, 1, ReflClass::Semisimple { det_exponent: 1 }, 0, 2).unwrap();
        assert!(a.coeff.is_zero());
        let b = class_sum_value(4, 2, 1, ReflClass::Transvection, 0, 2).unwrap();
        assert_eq!(b.coeff, -q_int(4));
        assert!(class_sum_value(4, 3, 0, ReflClass::Transvection, 0, 2).is_err());
    }

    #[test]
    fn frobenius_examples() {
        assert_eq!(frobenius_count(2, 3, 2, 1).unwrap(), BigInt::from(4));
        assert_eq!(frobenius_count(4, 2, 4, 4).unwrap(), BigInt::from(3375));
        assert!(frobenius_count(3, 3, 2, 1).unwrap().is_zero());
        assert!(frobenius_count(3, 2, 2, 2).unwrap().is_zero());
        assert!(frobenius_count(3, 3, 3, 3).is_err());
        assert!(frobenius_count(3, 2, 3, 1).is_err());
    }

    #[test]
    fn frobenius_matches_closed_forms() {
        for n in 2..=4u64 {
            for ell in 0..=n + 3 {
                let t2 = tq(n, ell, TqRoute::Sum).unwrap().eval_i64(2).unwrap();
                assert_eq!(frobenius_count(n, 2, ell, ell).unwrap(), t2, "q=2 n={n} l={ell}");
                for q in [3u64, 4, 5] {
                    for m in 0..ell {
                        let expect = tq_nlm_checked(n, ell, m).unwrap().eval_i64(q as i64).unwrap();
                        assert_eq!(frobenius_count(n, q, ell, m).unwrap(), expect, "q={q} n={n} l={ell} m={m}");
                    }
                }
            }
        }
    }

    #[test]
    fn explicit_sequences_match_brute_force() {
        for &(n, q, ell) in &[(2usize, 3u64, 3usize), (2, 5, 3), (2, 4, 3)] {
            let g = GlGroup::over(n, q).unwrap();
            let c = g.singer_cycle().unwrap();
            let fc = FactorCounter::new(g.clone()).unwrap();
            // every sequence: m leading ones, then semisimple factors
            for m in 0..ell {
                let r = ell - m;
                let mut exps = vec![1u64; r];
                loop {
                    let mut alphas = vec![FqElem::ONE; m];
                    alphas.extend(exps.iter().map(|&e| FqElem::from_exponent(e as u32)));
                    let brute = fc.count_fixed_dets(&c, &alphas).unwrap().count;
                    let chars = frobenius_count_dets(n as u64, q, m as u64, &exps).unwrap();
                    assert_eq!(BigInt::from(brute), chars, "q={q} m={m} {exps:?}");
                    // next exponent vector in {1..q-2}^r
                    let mut i = 0;
                    while i < r {
                        exps[i] += 1;
                        if exps[i] < q - 1 {
                            break;
                        }
                        exps[i] = 1;
                        i += 1;
                    }
                    if i == r {
                        break;
                    }
                }
            }
        }
    }
}
