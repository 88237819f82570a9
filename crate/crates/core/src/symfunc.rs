//! Symmetric-function toolkit: complete and elementary symmetric functions,
//! power sums and the associated time variables, one-row characters and
//! their determinantal lift to arbitrary partitions, and Schur functions in
//! bialternant and Jacobi-Trudi form.
//!
//! The character polynomials `chi_r{t}` are defined by the generating
//! function `exp(sum_m t_m k^m) = sum_r chi_r{t} k^r`. Substituting the
//! normalized power sums `t_m = p_m{x}/m` of a finite alphabet turns
//! `chi_r` into the complete symmetric function `h_r{x}`, which is what
//! ties the determinantal character formulas to Schur polynomials.

use crate::error::{Error, Result};
use crate::linalg::{det_ring, Matrix};
use crate::partition::Partition;
use crate::scalar::{Field, Ring};

/// `e_0, ..., e_up_to` of the alphabet (zero beyond the alphabet size).
pub fn elementary_all<R: Ring>(vals: &[R], up_to: usize) -> Vec<R> {
    let mut e = vec![R::zero(); up_to + 1];
    e[0] = R::one();
    for v in vals {
        for k in (1..=up_to).rev() {
            let add = v.mul(&e[k - 1]);
            e[k] = e[k].add(&add);
        }
    }
    e
}

/// `h_0, ..., h_up_to` of the alphabet.
pub fn complete_all<R: Ring>(vals: &[R], up_to: usize) -> Vec<R> {
    let mut h = vec![R::zero(); up_to + 1];
    h[0] = R::one();
    for v in vals {
        for k in 1..=up_to {
            let add = v.mul(&h[k - 1]);
            h[k] = h[k].add(&add);
        }
    }
    h
}

/// `p_m = sum_i vals_i^m`, `m >= 1`.
pub fn power_sum<R: Ring>(vals: &[R], m: u32) -> R {
    let mut acc = R::zero();
    for v in vals {
        acc = acc.add(&v.pow_u(m));
    }
    acc
}

/// Time variables `t_m = p_m / m` for `m = 1..=up_to`; index 0 is unused
/// and set to zero so that `t[m]` reads naturally.
pub fn times_from_powersums<R: Ring>(vals: &[R], up_to: usize) -> Vec<R> {
    let mut t = vec![R::zero(); up_to + 1];
    for m in 1..=up_to {
        t[m] = power_sum(vals, m as u32).div_int(m as i64);
    }
    t
}

/// `chi_0, ..., chi_up_to` at the given times, by the first-order
/// recurrence `r chi_r = sum_{m=1}^{r} m t_m chi_{r-m}`.
pub fn char_row_all<R: Ring>(times: &[R], up_to: usize) -> Result<Vec<R>> {
    if times.len() < up_to + 1 {
        return Err(Error::InsufficientTimes {
            needed: up_to,
            got: times.len().saturating_sub(1),
        });
    }
    let mut chi = vec![R::zero(); up_to + 1];
    chi[0] = R::one();
    for r in 1..=up_to {
        let mut acc = R::zero();
        for m in 1..=r {
            let term = times[m].mul(&chi[r - m]).mul(&R::from_i64(m as i64));
            acc = acc.add(&term);
        }
        chi[r] = acc.div_int(r as i64);
    }
    Ok(chi)
}

/// One-row character `chi_r{t}`.
pub fn char_one_row<R: Ring>(times: &[R], r: usize) -> Result<R> {
    Ok(char_row_all(times, r)?.pop().expect("nonempty"))
}

/// Multi-row character `chi_lambda{t} = det(chi_{lambda_i - i + j})`.
pub fn char_partition<R: Ring>(times: &[R], lambda: &Partition) -> Result<R> {
    let l = lambda.len();
    if l == 0 {
        return Ok(R::one());
    }
    let max_index = lambda.part(1) as usize + l - 1;
    let chi = char_row_all(times, max_index)?;
    let m = Matrix::from_fn(l, l, |i, j| {
        let idx = lambda.part(i + 1) as i64 - (i as i64 + 1) + (j as i64 + 1);
        if idx < 0 {
            R::zero()
        } else {
            chi[idx as usize].clone()
        }
    });
    det_ring(&m)
}

/// Jacobi-Trudi determinant `det(h_{lambda_i - i + j})` from a precomputed
/// list `h[0..]`; needs `h` up to index `lambda_1 + len(lambda) - 1`.
pub fn schur_jacobi_trudi<R: Ring>(h: &[R], lambda: &Partition) -> Result<R> {
    let l = lambda.len();
    if l == 0 {
        return Ok(R::one());
    }
    let max_index = lambda.part(1) as usize + l - 1;
    if h.len() <= max_index {
        return Err(Error::InsufficientTimes {
            needed: max_index,
            got: h.len().saturating_sub(1),
        });
    }
    let m = Matrix::from_fn(l, l, |i, j| {
        let idx = lambda.part(i + 1) as i64 - (i as i64 + 1) + (j as i64 + 1);
        if idx < 0 {
            R::zero()
        } else {
            h[idx as usize].clone()
        }
    });
    det_ring(&m)
}

/// Dual Jacobi-Trudi determinant `det(e_{lambda'_i - i + j})` on the
/// conjugate partition, from a precomputed list `e[0..]`.
pub fn schur_dual_jacobi_trudi<R: Ring>(e: &[R], lambda: &Partition) -> Result<R> {
    schur_jacobi_trudi(e, &lambda.conjugate())
}

/// Schur polynomial as a bialternant ratio
/// `det(x_i^{lambda_j + N - j}) / det(x_i^{N - j})`.
///
/// Returns zero if the partition has more rows than there are variables,
/// and [`Error::DegenerateInput`] if two variables (nearly) coincide.
pub fn schur_bialternant<F: Field>(x: &[F], lambda: &Partition) -> Result<F> {
    let n = x.len();
    if lambda.len() > n {
        return Ok(F::zero());
    }
    let mut vandermonde = F::one();
    for i in 0..n {
        for j in (i + 1)..n {
            let diff = x[i].sub(&x[j]);
            if x[i].approx_eq(&x[j]) {
                return Err(Error::DegenerateInput(format!(
                    "bialternant needs distinct variables, x[{i}] ~ x[{j}]"
                )));
            }
            vandermonde = vandermonde.mul(&diff);
        }
    }
    let numer = Matrix::from_fn(n, n, |i, j| {
        let e = lambda.part(j + 1) as i64 + (n - 1 - j) as i64;
        x[i].pow_i(e)
    });
    Ok(crate::linalg::det(&numer).div(&vandermonde))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MultiPoly;
    use crate::scalar::{random_rat, seeded_rng, Rat};

    type P = MultiPoly<Rat>;

    /// Times as free polynomial variables t_1 = x0, t_2 = x1, ...
    fn symbolic_times(up_to: usize) -> Vec<P> {
        let mut t = vec![P::zero(); up_to + 1];
        for m in 1..=up_to {
            t[m] = P::var(m - 1, 1);
        }
        t
    }

    fn rational_alphabet(rng: &mut rand_chacha::ChaCha8Rng, n: usize) -> Vec<Rat> {
        (0..n).map(|_| random_rat(rng, 9)).collect()
    }

    #[test]
    fn elementary_and_complete_small_cases() {
        let a = Rat::from_i64(2);
        let b = Rat::from_i64(5);
        let e = elementary_all(&[a.clone(), b.clone()], 3);
        assert_eq!(e[1], Rat::from_i64(7));
        assert_eq!(e[2], Rat::from_i64(10));
        assert_eq!(e[3], Rat::zero());
        let h = complete_all(&[a, b], 2);
        // h_2 = a^2 + ab + b^2 = 4 + 10 + 25
        assert_eq!(h[2], Rat::from_i64(39));
    }

    #[test]
    fn one_row_characters_match_closed_forms() {
        let t = symbolic_times(4);
        let chi = char_row_all(&t, 3).unwrap();
        let t1 = P::var(0, 1);
        let t2 = P::var(1, 1);
        let t3 = P::var(2, 1);
        // chi_2 = t1^2/2 + t2
        let expect2 = t1.mul(&t1).div_int(2).add(&t2);
        assert_eq!(chi[2], expect2);
        // chi_3 = t1^3/6 + t1 t2 + t3
        let expect3 = t1
            .mul(&t1)
            .mul(&t1)
            .div_int(6)
            .add(&t1.mul(&t2))
            .add(&t3);
        assert_eq!(chi[3], expect3);
    }

    #[test]
    fn multi_row_characters_match_closed_forms() {
        let t = symbolic_times(4);
        let t1 = P::var(0, 1);
        let t2 = P::var(1, 1);
        let t3 = P::var(2, 1);
        // chi_{[1,1]} = t1^2/2 - t2
        let got = char_partition(&t, &Partition::new(vec![1, 1])).unwrap();
        assert_eq!(got, t1.mul(&t1).div_int(2).sub(&t2));
        // chi_{[2,1]} = t1^3/3 - t3
        let got = char_partition(&t, &Partition::new(vec![2, 1])).unwrap();
        assert_eq!(got, t1.mul(&t1).mul(&t1).div_int(3).sub(&t3));
    }

    #[test]
    fn characters_at_powersum_times_are_complete_functions() {
        let mut rng = seeded_rng(5);
        let x = rational_alphabet(&mut rng, 4);
        let t = times_from_powersums(&x, 6);
        let chi = char_row_all(&t, 6).unwrap();
        let h = complete_all(&x, 6);
        assert_eq!(chi, h);
    }

    #[test]
    fn schur_forms_agree_on_rational_points() {
        let mut rng = seeded_rng(17);
        let x = rational_alphabet(&mut rng, 3);
        let lambdas = [
            Partition::new(vec![2]),
            Partition::new(vec![1, 1]),
            Partition::new(vec![3, 1]),
            Partition::new(vec![2, 2, 1]),
        ];
        let t = times_from_powersums(&x, 8);
        let h = complete_all(&x, 8);
        let e = elementary_all(&x, 8);
        for l in &lambdas {
            let via_char = char_partition(&t, l).unwrap();
            let via_jt = schur_jacobi_trudi(&h, l).unwrap();
            let via_dual = schur_dual_jacobi_trudi(&e, l).unwrap();
            let via_alt = schur_bialternant(&x, l).unwrap();
            assert_eq!(via_char, via_jt, "{l}");
            assert_eq!(via_jt, via_dual, "{l}");
            assert_eq!(via_jt, via_alt, "{l}");
        }
    }

    #[test]
    fn too_many_rows_vanishes() {
        let mut rng = seeded_rng(29);
        let x = rational_alphabet(&mut rng, 2);
        let tall = Partition::new(vec![1, 1, 1]);
        assert_eq!(schur_bialternant(&x, &tall).unwrap(), Rat::zero());
        // The determinantal forms see the same vanishing.
        let t = times_from_powersums(&x, 6);
        let h = complete_all(&x, 6);
        assert_eq!(char_partition(&t, &tall).unwrap(), Rat::zero());
        assert_eq!(schur_jacobi_trudi(&h, &tall).unwrap(), Rat::zero());
    }

    #[test]
    fn complete_function_deletion_identities() {
        // With x-hat denoting deletion: h_i{x-hat_m} + x_m h_{i-1}{x} = h_i{x},
        // and h_i{x-hat_l} - h_i{x-hat_m} = (x_m - x_l) h_{i-1}{x}.
        let mut rng = seeded_rng(41);
        let x = rational_alphabet(&mut rng, 5);
        let h_full = complete_all(&x, 7);
        for m in 0..x.len() {
            let mut xm: Vec<Rat> = x.clone();
            xm.remove(m);
            let h_del = complete_all(&xm, 7);
            for i in 1..=7 {
                let lhs = h_del[i].add(&x[m].mul(&h_full[i - 1]));
                assert_eq!(lhs, h_full[i]);
            }
        }
        for l in 0..x.len() {
            for m in 0..x.len() {
                if l == m {
                    continue;
                }
                let mut xl = x.clone();
                xl.remove(l);
                let mut xm = x.clone();
                xm.remove(m);
                let hl = complete_all(&xl, 7);
                let hm = complete_all(&xm, 7);
                for i in 1..=7 {
                    let lhs = hl[i].sub(&hm[i]);
                    let rhs = x[m].sub(&x[l]).mul(&h_full[i - 1]);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn missing_times_are_reported() {
        let t = symbolic_times(2);
        match char_one_row(&t, 5) {
            Err(Error::InsufficientTimes { needed: 5, got: 2 }) => {}
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn degenerate_bialternant_is_rejected() {
        let x = [Rat::from_i64(3), Rat::from_i64(3)];
        match schur_bialternant(&x, &Partition::new(vec![1])) {
            Err(Error::DegenerateInput(_)) => {}
            other => panic!("unexpected: {other:?}"),
        }
    }
}
