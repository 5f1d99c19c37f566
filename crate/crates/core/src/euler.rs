//! Euler polynomials of arbitrary positive order, generated by
//! `(2 / (e^t + 1))^k e^{xt}`, together with the signed moment sequence
//! `E_n = E_n(0)` and exact integration of polynomials against it.

use std::collections::HashMap;
use std::sync::Arc;

use once_cell::sync::Lazy;
use std::sync::Mutex;

use crate::numeric::{factorial, Poly, Rational};
use crate::series::{exp_minus_one, exp_xt_symbolic, Series};

/// Euler polynomials `E_0^{(k)}(x), ..., E_{max_n}^{(k)}(x)` of order `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct EulerSequence {
    order_k: usize,
    max_n: usize,
    polys: Vec<Poly>,
}

impl EulerSequence {
    pub fn order_k(&self) -> usize {
        self.order_k
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn poly(&self, n: usize) -> &Poly {
        &self.polys[n]
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }
}

fn compute(order_k: usize, max_n: usize) -> EulerSequence {
    assert!(order_k >= 1, "order must be positive");
    // (2 / (e^t + 1))^k, then multiply by the symbolic block e^{xt}.
    let base = exp_minus_one(max_n).add(&Series::constant(Rational::from_integer(2.into()), max_n));
    let gk = base
        .inv()
        .expect("e^t + 1 has unit constant term")
        .scale(&Rational::from_integer(2.into()))
        .pow(order_k as u32);
    let product = gk.lift_to_poly().mul(&exp_xt_symbolic(max_n));
    let polys = (0..=max_n)
        .map(|n| product.coeff(n).scale(&Rational::from_integer(factorial(n))))
        .collect();
    EulerSequence {
        order_k,
        max_n,
        polys,
    }
}

static CACHE: Lazy<Mutex<HashMap<usize, Arc<EulerSequence>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Memoized Euler sequence of order `k` covering degrees up to `max_n`.
pub fn euler_polys(order_k: usize, max_n: usize) -> Arc<EulerSequence> {
    assert!(order_k >= 1, "order must be positive");
    let mut cache = CACHE.lock().unwrap();
    let entry = cache
        .entry(order_k)
        .or_insert_with(|| Arc::new(compute(order_k, max_n)));
    if entry.max_n < max_n {
        *entry = Arc::new(compute(order_k, max_n));
    }
    Arc::clone(entry)
}

/// `E_n^{(k)}(a)` evaluated exactly.
pub fn euler_value(n: usize, order_k: usize, a: &Rational) -> Rational {
    euler_polys(order_k, n).poly(n).eval(a)
}

/// Moment `E_n(0)` of the signed alternating measure: the value the
/// alternating sum `sum_{x<p^N} x^n (-1)^x` converges to p-adically.
pub fn fermionic_moment(n: usize) -> Rational {
    euler_value(n, 1, &Rational::from_integer(0.into()))
}

/// Exact integral of a polynomial against the signed alternating measure,
/// expanded coefficientwise through the moments.
pub fn integrate_poly(f: &Poly) -> Rational {
    let mut acc = Rational::from_integer(0.into());
    for (i, c) in f.coeffs().iter().enumerate() {
        acc += c * fermionic_moment(i);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rat, rat_int};
    use proptest::prelude::*;
    use rand::Rng;

    fn poly_from(coeffs: &[Rational]) -> Poly {
        Poly::new(coeffs.to_vec())
    }

    #[test]
    fn first_order_polynomials() {
        let seq = euler_polys(1, 3);
        assert_eq!(*seq.poly(0), Poly::one());
        // E_1(x) = x - 1/2
        assert_eq!(*seq.poly(1), Poly::linear(rat(-1, 2), rat_int(1)));
        // E_2(x) = x^2 - x
        let e2 = poly_from(&[rat_int(0), rat_int(-1), rat_int(1)]);
        assert_eq!(*seq.poly(2), e2);
    }

    #[test]
    fn second_order_value() {
        // E_1^{(2)}(0) = -1
        assert_eq!(euler_value(1, 2, &rat_int(0)), rat_int(-1));
        assert_eq!(euler_value(1, 2, &rat_int(1)), rat_int(0));
    }

    #[test]
    fn moments() {
        assert_eq!(fermionic_moment(0), rat_int(1));
        assert_eq!(fermionic_moment(1), rat(-1, 2));
        assert_eq!(fermionic_moment(2), rat_int(0));
        assert_eq!(fermionic_moment(3), rat(1, 4));
    }

    #[test]
    fn integrate_examples() {
        // constants integrate to themselves
        assert_eq!(integrate_poly(&Poly::constant(rat(3, 7))), rat(3, 7));
        // x^2 + x integrates to 0 + (-1/2)
        let f = poly_from(&[rat_int(0), rat_int(1), rat_int(1)]);
        assert_eq!(integrate_poly(&f), rat(-1, 2));
        // falling factorial (x)_2 = x^2 - x integrates to 1/2
        let falling2 = crate::numeric::falling_factorial_poly(2);
        assert_eq!(integrate_poly(&falling2), rat(1, 2));
    }

    #[test]
    fn functional_equation_for_random_polynomials() {
        // I(f(x+1)) + I(f(x)) = 2 f(0) for every polynomial f
        let mut rng = rand::thread_rng();
        for _ in 0..50 {
            let deg = rng.gen_range(0..=8);
            let coeffs: Vec<Rational> = (0..=deg)
                .map(|_| rat(rng.gen_range(-20..=20), rng.gen_range(1..=9)))
                .collect();
            let f = poly_from(&coeffs);
            let shifted = f.shift(&rat_int(1));
            let lhs = integrate_poly(&shifted) + integrate_poly(&f);
            let rhs = rat_int(2) * f.eval(&rat_int(0));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn order_composition() {
        // the order-k generating function is the k-th power of the order-1 one,
        // so E_n^{(k)} is the binomial convolution of k order-1 layers
        for k in 2..=4usize {
            let seq_k = euler_polys(k, 8);
            let lower = euler_polys(k - 1, 8);
            let base = euler_polys(1, 8);
            for n in 0..=8usize {
                let mut acc = Poly::zero();
                for m in 0..=n {
                    let b = crate::numeric::binomial_general(&rat_int(n as i64), m);
                    let e1_at_zero = base.poly(m).eval(&rat_int(0));
                    acc = &acc + &lower.poly(n - m).scale(&(b * e1_at_zero));
                }
                assert_eq!(*seq_k.poly(n), acc, "composition at k = {k}, n = {n}");
            }
        }
    }

    #[test]
    fn monic_of_degree_n() {
        for k in 1..=4usize {
            let seq = euler_polys(k, 10);
            for n in 0..=10usize {
                assert_eq!(seq.poly(n).degree(), Some(n));
                assert_eq!(seq.poly(n).leading().unwrap(), &rat_int(1));
            }
        }
    }

    #[test]
    fn appell_derivative() {
        for k in 1..=3usize {
            let seq = euler_polys(k, 10);
            for n in 1..=10usize {
                let expect = seq.poly(n - 1).scale(&rat_int(n as i64));
                assert_eq!(seq.poly(n).derivative(), expect);
            }
        }
    }

    proptest! {
        #[test]
        fn integration_is_linear(a in -10i64..=10, b in -10i64..=10, d1 in 0usize..5, d2 in 0usize..5) {
            let f = Poly::monomial(d1);
            let g = Poly::monomial(d2);
            let combo = &f.scale(&rat_int(a)) + &g.scale(&rat_int(b));
            let direct = integrate_poly(&combo);
            let split = rat_int(a) * integrate_poly(&f) + rat_int(b) * integrate_poly(&g);
            prop_assert_eq!(direct, split);
        }
    }
}
