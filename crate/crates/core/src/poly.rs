//! Sparse multivariate Laurent polynomials over a generic coefficient ring,
//! plus exact interpolation of polynomial data on tensor-product grids.
//!
//! Exponent vectors are stored with trailing zeros trimmed, so a polynomial
//! never pins down an ambient variable count; routines that need one take it
//! as a parameter. Negative exponents are allowed throughout, which is what
//! lets vertex weights like `e^{u} - e^{-u}` be modelled exactly with a
//! monomial standing in for each exponential.

use crate::scalar::{Field, Ring};
use std::collections::BTreeMap;
use std::fmt;

/// Sparse Laurent polynomial: exponent vector -> nonzero coefficient.
#[derive(Clone, PartialEq)]
pub struct MultiPoly<R: Ring> {
    terms: BTreeMap<Vec<i32>, R>,
}

fn trim(mut e: Vec<i32>) -> Vec<i32> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

impl<R: Ring> MultiPoly<R> {
    pub fn new() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: R) -> Self {
        let mut p = Self::new();
        if !c.is_zero() {
            p.terms.insert(Vec::new(), c);
        }
        p
    }

    /// The monomial `x_i^e` (Laurent: `e` may be negative).
    pub fn var(i: usize, e: i32) -> Self {
        Self::monomial(
            {
                let mut v = vec![0; i + 1];
                v[i] = e;
                v
            },
            R::one(),
        )
    }

    pub fn monomial(exps: Vec<i32>, coeff: R) -> Self {
        let mut p = Self::new();
        if !coeff.is_zero() {
            p.terms.insert(trim(exps), coeff);
        }
        p
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &R)> {
        self.terms.iter()
    }

    /// Coefficient of the given exponent vector (zero if absent).
    pub fn coeff(&self, exps: &[i32]) -> R {
        self.terms.get(&trim(exps.to_vec())).cloned().unwrap_or_else(R::zero)
    }

    fn add_term(&mut self, exps: Vec<i32>, c: &R) {
        if c.is_zero() {
            return;
        }
        let key = trim(exps);
        match self.terms.get_mut(&key) {
            Some(existing) => {
                let sum = existing.add(c);
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> MultiPoly<S> {
        let mut out = MultiPoly::new();
        for (e, c) in &self.terms {
            out.add_term(e.clone(), &f(c));
        }
        out
    }

    /// Multiplies by a single monomial.
    pub fn mul_monomial(&self, exps: &[i32], coeff: &R) -> Self {
        let mut out = Self::new();
        for (e, c) in &self.terms {
            let mut key = e.clone();
            if key.len() < exps.len() {
                key.resize(exps.len(), 0);
            }
            for (k, d) in key.iter_mut().zip(exps) {
                *k += d;
            }
            out.add_term(key, &c.mul(coeff));
        }
        out
    }

    /// Largest number of variables any term touches.
    pub fn width(&self) -> usize {
        self.terms.keys().map(|e| e.len()).max().unwrap_or(0)
    }
}

impl<F: Field> MultiPoly<F> {
    /// Evaluates at a point, `point.len()` >= the polynomial's width.
    pub fn eval(&self, point: &[F]) -> F {
        let mut acc = F::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &ei) in e.iter().enumerate() {
                if ei != 0 {
                    term = term.mul(&point[i].pow_i(ei as i64));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }
}

impl<R: Ring> Default for MultiPoly<R> {
    fn default() -> Self {
        Self::new()
    }
}

impl<R: Ring> fmt::Debug for MultiPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<R: Ring> fmt::Display for MultiPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (i, &ei) in e.iter().enumerate() {
                if ei != 0 {
                    write!(f, "*x{i}^{ei}")?;
                }
            }
        }
        Ok(())
    }
}

impl<R: Ring> Ring for MultiPoly<R> {
    fn zero() -> Self {
        Self::new()
    }
    fn one() -> Self {
        Self::constant(R::one())
    }
    fn from_i64(n: i64) -> Self {
        Self::constant(R::from_i64(n))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
    fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), &c.neg());
        }
        out
    }
    fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = ea.clone();
                if e.len() < eb.len() {
                    e.resize(eb.len(), 0);
                }
                for (k, d) in e.iter_mut().zip(eb) {
                    *k += d;
                }
                out.add_term(e, &ca.mul(cb));
            }
        }
        out
    }
    fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }
    fn div_int(&self, n: i64) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.div_int(n);
        }
        out
    }
}

/// `prod_{i<j} (x_i - x_j)` on `n` variables.
pub fn vandermonde_poly<R: Ring>(n: usize) -> MultiPoly<R> {
    let mut v = MultiPoly::one();
    for i in 0..n {
        for j in (i + 1)..n {
            let diff = MultiPoly::var(i, 1).sub(&MultiPoly::var(j, 1));
            v = v.mul(&diff);
        }
    }
    v
}

/// Interpolation nodes `1, 2, ..., count` in the field.
pub fn integer_nodes<F: Field>(count: usize) -> Vec<F> {
    (1..=count as i64).map(F::from_i64).collect()
}

/// Recovers a polynomial from its values on a tensor-product grid.
///
/// `nodes[v]` lists the sample points for variable `v`; the polynomial must
/// have degree `< nodes[v].len()` in that variable, in which case the result
/// is exact (up to rounding in inexact fields). The callback is invoked once
/// per grid point, in row-major order with the last variable fastest.
pub fn interpolate_on_grid<F: Field>(
    nodes: &[Vec<F>],
    f: &mut dyn FnMut(&[F]) -> F,
) -> MultiPoly<F> {
    let nv = nodes.len();
    let dims: Vec<usize> = nodes.iter().map(|ns| ns.len()).collect();
    assert!(dims.iter().all(|&d| d > 0), "each variable needs at least one node");
    let total: usize = dims.iter().product();

    // Sample the grid.
    let mut values = Vec::with_capacity(total);
    let mut point = vec![F::zero(); nv];
    let mut index = vec![0usize; nv];
    for _ in 0..total {
        for v in 0..nv {
            point[v] = nodes[v][index[v]].clone();
        }
        values.push(f(&point));
        for v in (0..nv).rev() {
            index[v] += 1;
            if index[v] < dims[v] {
                break;
            }
            index[v] = 0;
        }
    }

    // Axis by axis: divided differences, then Newton -> monomial, applied to
    // every 1-D line along that axis. Strides are row-major.
    let mut strides = vec![1usize; nv];
    for v in (0..nv.saturating_sub(1)).rev() {
        strides[v] = strides[v + 1] * dims[v + 1];
    }
    for v in 0..nv {
        let d = dims[v];
        let stride = strides[v];
        let ts = &nodes[v];
        // Lines along axis v: iterate over all indices with axis v fixed at 0.
        let block = stride * d;
        let mut base = 0;
        while base < total {
            for off in 0..stride {
                let start = base + off;
                // Divided differences in place.
                for k in 1..d {
                    for j in (k..d).rev() {
                        let denom = ts[j].sub(&ts[j - k]);
                        let num = values[start + j * stride].sub(&values[start + (j - 1) * stride]);
                        values[start + j * stride] = num.div(&denom);
                    }
                }
                // Newton form -> monomial coefficients, in place:
                // p = c_{d-1}; for k = d-2..0: p = c_k + (x - t_k) * p.
                for k in (0..d.saturating_sub(1)).rev() {
                    for j in k..d - 1 {
                        let shifted = values[start + (j + 1) * stride].mul(&ts[k]);
                        values[start + j * stride] =
                            values[start + j * stride].sub(&shifted);
                    }
                }
            }
            base += block;
        }
    }

    // Collect nonzero monomials.
    let mut out = MultiPoly::new();
    let mut index = vec![0usize; nv];
    for (flat, c) in values.into_iter().enumerate() {
        if !c.is_zero() {
            let mut rem = flat;
            for v in 0..nv {
                index[v] = rem / strides[v];
                rem %= strides[v];
            }
            out.add_term(index.iter().map(|&e| e as i32).collect(), &c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{random_rat, seeded_rng, Cplx, Rat};

    fn p(pairs: &[(&[i32], i64)]) -> MultiPoly<Rat> {
        let mut q = MultiPoly::new();
        for (e, c) in pairs {
            q = q.add(&MultiPoly::monomial(e.to_vec(), Rat::from_i64(*c)));
        }
        q
    }

    #[test]
    fn laurent_arithmetic() {
        let x = MultiPoly::<Rat>::var(0, 1);
        let y = MultiPoly::<Rat>::var(1, 1);
        let prod = x.add(&y).mul(&x.sub(&y));
        assert_eq!(prod, p(&[(&[2], 1), (&[0, 2], -1)]));

        let xinv = MultiPoly::<Rat>::var(0, -1);
        assert_eq!(x.mul(&xinv), MultiPoly::one());
        let bracket = x.sub(&xinv);
        assert_eq!(bracket.coeff(&[-1]), Rat::from_i64(-1));
    }

    #[test]
    fn eval_matches_structure() {
        let q = p(&[(&[2, 1], 3), (&[0, 0], -5)]);
        let at = [Rat::from_i64(2), Rat::from_i64(7)];
        assert_eq!(q.eval(&at), Rat::from_i64(3 * 4 * 7 - 5));
        let l = MultiPoly::<Rat>::var(0, -2);
        assert_eq!(l.eval(&[Rat::from_i64(2)]), Rat::new(1, 4));
    }

    #[test]
    fn vandermonde_is_alternating() {
        let v = vandermonde_poly::<Rat>(3);
        let a = [Rat::from_i64(2), Rat::from_i64(5), Rat::from_i64(-1)];
        let b = [Rat::from_i64(5), Rat::from_i64(2), Rat::from_i64(-1)];
        assert_eq!(v.eval(&a), v.eval(&b).neg());
        // (2-5)(2+1)(5+1) = -54
        assert_eq!(v.eval(&a), Rat::from_i64(-54));
    }

    #[test]
    fn interpolation_recovers_rational_polynomial_exactly() {
        let mut rng = seeded_rng(7);
        let mut target = MultiPoly::<Rat>::new();
        for e0 in 0..3i32 {
            for e1 in 0..2i32 {
                for e2 in 0..4i32 {
                    target = target.add(&MultiPoly::monomial(
                        vec![e0, e1, e2],
                        random_rat(&mut rng, 9),
                    ));
                }
            }
        }
        let nodes: Vec<Vec<Rat>> =
            vec![integer_nodes(3), integer_nodes(2), integer_nodes(4)];
        let got = interpolate_on_grid(&nodes, &mut |pt| target.eval(pt));
        assert_eq!(got, target);
    }

    #[test]
    fn interpolation_works_in_floats() {
        let prec = 128;
        let c = |n: i64| Cplx::with_val_i64(prec, n);
        // f(x0, x1) = (3 + i) x0^2 x1 - 7
        let lead = Cplx::from_f64(prec, 3.0, 1.0);
        let f = |pt: &[Cplx]| {
            let sq = pt[0].mul(&pt[0]);
            lead.mul(&sq).mul(&pt[1]).sub(&c(7))
        };
        let nodes: Vec<Vec<Cplx>> = vec![integer_nodes(3), integer_nodes(2)];
        let got = interpolate_on_grid(&nodes, &mut |pt| f(pt));
        assert!(got.coeff(&[2, 1]).approx_eq(&lead));
        assert!(got.coeff(&[0, 0]).approx_eq(&c(-7)));
        // Cross-check by evaluating somewhere off the grid.
        let pt = [Cplx::from_f64(prec, 0.3, -0.4), Cplx::from_f64(prec, 1.7, 0.2)];
        assert!(got.eval(&pt).approx_eq(&f(&pt)));
    }
}
