//! Truncated power series with rational-in-q coefficients, and the generating
//! function checks built on them.

use super::basics::{choose2, gl_order_poly, q_binom, q_int, qq};
use super::classical::classical_t;
use super::tq::{tq_checked, tq};
use super::{IdentityReport, QLaurent, QPoly, RatFunc, TqRoute};
use crate::error::Result;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::json;

/// `sum_{i <= order} coeffs[i] t^i` in an outer variable t.
#[derive(Clone, Debug)]
pub struct QSeries {
    coeffs: Vec<RatFunc>,
}

impl QSeries {
    pub fn zero(order: usize) -> QSeries {
        QSeries {
            coeffs: vec![RatFunc::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> QSeries {
        let mut s = QSeries::zero(order);
        s.coeffs[0] = RatFunc::one();
        s
    }

    pub fn from_coeffs(coeffs: Vec<RatFunc>) -> QSeries {
        QSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &RatFunc {
        &self.coeffs[i]
    }

    /// `1 / (1 + a t) = sum_j (-a)^j t^j`.
    pub fn geometric(a: &QPoly, order: usize) -> QSeries {
        let neg = -a;
        QSeries {
            coeffs: (0..=order).map(|j| RatFunc::from_poly(neg.pow(j as u64))).collect(),
        }
    }

    /// `exp(a t) = sum_j a^j t^j / j!`.
    pub fn exp(a: &RatFunc, order: usize) -> QSeries {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = RatFunc::one();
        for j in 0..=order {
            if j > 0 {
                term = &(&term * a) * &RatFunc::new(QPoly::one(), QPoly::constant(j as u64));
            }
            coeffs.push(term.reduced());
        }
        QSeries { coeffs }
    }

    pub fn mul(&self, other: &QSeries) -> QSeries {
        let order = self.order().min(other.order());
        let mut out = QSeries::zero(order);
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(order - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                out.coeffs[i + j] = &out.coeffs[i + j] + &(&self.coeffs[i] * &other.coeffs[j]);
            }
        }
        for c in out.coeffs.iter_mut() {
            *c = c.reduced();
        }
        out
    }

    pub fn scale(&self, c: &RatFunc) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|x| (x * c).reduced()).collect(),
        }
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> QSeries {
        let order = self.order();
        let mut out = QSeries::zero(order);
        for i in 0..=order.saturating_sub(k) {
            if i + k <= order {
                out.coeffs[i + k] = self.coeffs[i].clone();
            }
        }
        out
    }
}

/// Expands `(q^n-1)^(n-1) x^n (1+x[n])^(-1) prod_k (1+x[n](1+q^k-q^(k+1)))^(-1)` to
/// order `l_max` and compares with `t_q(n, l)`; also verifies the partial
/// fraction decomposition of the same rational function.
pub fn ogf_check(n: u64, l_max: u64) -> Result<IdentityReport> {
    let order = l_max as usize;
    let qn = q_int(n);
    let mut series = QSeries::geometric(&qn, order);
    for k in 0..n {
        let a = &qn * &(QPoly::one() + QPoly::monomial(1, k as i64) - QPoly::monomial(1, k as i64 + 1));
        series = series.mul(&QSeries::geometric(&a, order));
    }
    let lead = (QPoly::monomial(1, n as i64) - QPoly::one()).pow(n - 1);
    series = series.shift(n as usize).scale(&RatFunc::from_poly(lead));
    let mut witness = None;
    for l in 0..=l_max {
        let expect = RatFunc::from_poly(tq_checked(n, l)?);
        if series.coeff(l as usize) != &expect {
            witness = Some(format!("coefficient of x^{l}: series {} vs formula {}", series.coeff(l as usize), expect));
            break;
        }
    }
    if witness.is_none() && !partial_fractions_hold(n) {
        witness = Some("partial fraction expansion fails after clearing denominators".into());
    }
    Ok(IdentityReport {
        check: "ogf".into(),
        params: json!({ "n": n, "l_max": l_max }),
        pass: witness.is_none(),
        witness,
    })
}

/// Clears denominators in
/// `(q^n-1)^(n-1) x^n / D(x) = (-1)^n / (q^C(n,2) (q^n-1)) (1/P(x) + sum_k c_k / P_k(x))`
/// with `c_k = (-1)^(k+1) q^C(k+1,2) / ((q;q)_k (q;q)_(n-1-k))`, multiplying
/// through by `D(x) q^C(n,2) (q^n-1) (q;q)_(n-1)`.
pub fn partial_fractions_hold(n: u64) -> bool {
    let qn = q_int(n);
    let linear = |a: &QPoly| &QLaurent::one() + &QLaurent::x().scale(&(&qn * a));
    let p_hyp = linear(&QPoly::one());
    // factor for (1 + q^j - q^(j+1))
    let p = |j: u64| linear(&(QPoly::one() + QPoly::monomial(1, j as i64) - QPoly::monomial(1, j as i64 + 1)));
    let factors: Vec<QLaurent> = (0..n).map(p).collect();
    let product_except = |skip: Option<usize>| -> QLaurent {
        let mut acc = QLaurent::one();
        for (j, f) in factors.iter().enumerate() {
            if Some(j) != skip {
                acc = &acc * f;
            }
        }
        acc
    };
    let qn_minus_1 = QPoly::monomial(1, n as i64) - QPoly::one();
    let k_const = (&qn_minus_1 * &qq(n - 1)).shift(choose2(n) as i64);
    let lhs = QLaurent::monomial(&k_const * &qn_minus_1.pow(n - 1), n as i64);

    let sign_n = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    let mut rhs = product_except(None).scale(&qq(n - 1));
    for k in 0..n {
        let sign = if k % 2 == 1 { BigInt::one() } else { -BigInt::one() };
        let c = q_binom(n - 1, k)
            .expect("k <= n-1")
            .shift(choose2(k + 1) as i64)
            .scale(&sign);
        // 1 + x[n](1 + q^(n-k-1) - q^(n-k)) is the factor with j = n-k-1
        let others = &product_except(Some((n - k - 1) as usize)) * &p_hyp;
        rhs = &rhs + &others.scale(&c);
    }
    rhs = rhs.scale(&QPoly::constant(sign_n));
    lhs == rhs
}

/// Expands the exponential generating function
/// `(q-1)^(n-1) q^C(n,2) / |GL_n| * exp(-u [n]) [D_q^(n-1)((exp(u x (q^n-1)) - 1) / x)]_(x=1)`
/// to order `l_max`, applying the q-difference operator to each u-coefficient,
/// and compares `l!` times the coefficient of `u^l` with `t_q(n, l)`.
pub fn egf_check(n: u64, l_max: u64) -> Result<IdentityReport> {
    let order = l_max as usize;
    let qn = q_int(n);
    let qn_minus_1 = QPoly::monomial(1, n as i64) - QPoly::one();
    // u^j coefficient of (exp(u x (q^n-1)) - 1)/x is x^(j-1) (q^n-1)^j / j!
    let mut inner = QSeries::zero(order);
    let mut factorial = BigInt::one();
    for j in 1..=order {
        factorial *= BigInt::from(j);
        let f = QLaurent::monomial(qn_minus_1.pow(j as u64), j as i64 - 1);
        let d = f.delta_q(n - 1).at_x_one();
        inner.coeffs[j] = RatFunc::new(d, QPoly::constant(factorial.clone()));
    }
    let decay = QSeries::exp(&RatFunc::from_poly(-&qn), order);
    let prefactor = RatFunc::new(
        QPoly::from_i64s(&[-1, 1]).pow(n - 1).shift(choose2(n) as i64),
        gl_order_poly(n),
    );
    let series = decay.mul(&inner).scale(&prefactor);
    let mut witness = None;
    let mut lfact = BigInt::one();
    for l in 0..=l_max {
        if l > 0 {
            lfact *= BigInt::from(l);
        }
        let got = &series.coeffs[l as usize] * &RatFunc::from_int(lfact.clone());
        let expect = RatFunc::from_poly(tq(n, l, TqRoute::Binomial)?);
        if got != expect {
            witness = Some(format!("coefficient of u^{l}/{l}!: {} vs {}", got.reduced(), expect));
            break;
        }
    }
    if witness.is_none() {
        if let Some(w) = jackson_egf_mismatch(n, l_max) {
            witness = Some(w);
        }
    }
    Ok(IdentityReport {
        check: "egf".into(),
        params: json!({ "n": n, "l_max": l_max }),
        pass: witness.is_none(),
        witness,
    })
}

/// Classical counterpart: `(1/n!) (e^(un/2) - e^(-un/2))^(n-1)` against `t(n, l)`.
pub fn jackson_egf_mismatch(n: u64, l_max: u64) -> Option<String> {
    let order = l_max as usize;
    let half_n = BigRational::new(BigInt::from(n), BigInt::from(2));
    let exp_series = |a: &BigRational| -> Vec<BigRational> {
        let mut out = Vec::with_capacity(order + 1);
        let mut term = BigRational::one();
        for j in 0..=order {
            if j > 0 {
                term = term * a / BigRational::from_integer(BigInt::from(j));
            }
            out.push(term.clone());
        }
        out
    };
    let plus = exp_series(&half_n);
    let minus = exp_series(&(-half_n.clone()));
    let diff: Vec<BigRational> = plus.iter().zip(&minus).map(|(a, b)| a - b).collect();
    let mut acc = vec![BigRational::zero(); order + 1];
    acc[0] = BigRational::one();
    for _ in 0..n.saturating_sub(1) {
        let mut next = vec![BigRational::zero(); order + 1];
        for i in 0..=order {
            for j in 0..=(order - i) {
                next[i + j] += &acc[i] * &diff[j];
            }
        }
        acc = next;
    }
    let nfact: BigInt = (1..=n).map(BigInt::from).product();
    let mut lfact = BigInt::one();
    for l in 0..=l_max {
        if l > 0 {
            lfact *= BigInt::from(l);
        }
        let got = &acc[l as usize] * BigRational::new(lfact.clone(), nfact.clone());
        let expect = BigRational::from_integer(classical_t(n, l));
        if got != expect {
            return Some(format!("classical coefficient of u^{l}/{l}!: {got} vs {expect}"));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ogf_small() {
        assert!(ogf_check(2, 6).unwrap().pass);
        assert!(ogf_check(4, 8).unwrap().pass);
    }

    #[test]
    fn ogf_low_coefficient_vanishes() {
        for n in 2..=4u64 {
            assert!(tq_checked(n, n - 1).unwrap().is_zero());
        }
    }

    #[test]
    fn egf_small() {
        assert!(egf_check(2, 5).unwrap().pass);
        assert!(egf_check(3, 6).unwrap().pass);
    }

    #[test]
    fn partial_fractions() {
        for n in 2..=5 {
            assert!(partial_fractions_hold(n), "n={n}");
        }
    }
}
