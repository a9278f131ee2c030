//! Graded multivariate polynomial spaces, power expansion of linear forms
//! and the differentiation pairing between the operator algebra (variables
//! `x1..xl`, acting as constant-coefficient differential operators) and the
//! solution algebra (variables `y1..yl`).
//!
//! The two algebras are kept apart at the type level: an operator polynomial
//! and a solution polynomial cannot be added or multiplied together, only
//! paired through differentiation. Coefficient vectors are indexed by the
//! graded-lexicographic monomial enumeration, largest first in the first
//! variable, so every serialized polynomial is reproducible.

use std::collections::HashMap;
use std::fmt;
use std::marker::PhantomData;

use crate::error::Error;
use crate::linalg::Matrix;
use crate::scalar::{self, Scalar};

/// Marker for the two polynomial algebras.
pub trait Space: Copy + Clone + fmt::Debug + PartialEq + Eq + 'static {
    /// Variable stem used when printing: `x` for operators, `y` for solutions.
    const SYMBOL: char;
}

/// The operator algebra: polynomials in `x1..xl` acting by differentiation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OperatorSpace;

/// The solution algebra: polynomials in `y1..yl` the operators act on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolutionSpace;

impl Space for OperatorSpace {
    const SYMBOL: char = 'x';
}

impl Space for SolutionSpace {
    const SYMBOL: char = 'y';
}

/// Number of monomials of total degree `degree` in `dim` variables,
/// `C(dim + degree - 1, degree)`.
pub fn monomial_count(dim: usize, degree: usize) -> usize {
    assert!(dim >= 1, "ambient dimension must be at least 1");
    let mut acc: u128 = 1;
    for i in 1..=degree as u128 {
        acc = acc * (dim as u128 - 1 + i) / i;
    }
    acc as usize
}

/// The fixed enumeration of exponent vectors of one graded piece.
///
/// Order is graded-lexicographic with the first variable weighted heaviest,
/// e.g. for two variables in degree 2: `v1^2, v1 v2, v2^2`.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    dim: usize,
    degree: usize,
    exponents: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl MonomialBasis {
    pub fn new(dim: usize, degree: usize) -> Self {
        assert!(dim >= 1, "ambient dimension must be at least 1");
        let mut exponents = Vec::with_capacity(monomial_count(dim, degree));
        let mut current = vec![0u32; dim];
        enumerate(dim, degree, 0, &mut current, &mut exponents);
        let index = exponents.iter().cloned().zip(0..).collect();
        MonomialBasis {
            dim,
            degree,
            exponents,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponents(&self, i: usize) -> &[u32] {
        &self.exponents[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u32]> {
        self.exponents.iter().map(|e| e.as_slice())
    }

    pub fn index_of(&self, exps: &[u32]) -> usize {
        *self
            .index
            .get(exps)
            .unwrap_or_else(|| panic!("exponent vector {exps:?} outside basis"))
    }
}

fn enumerate(
    dim: usize,
    degree: usize,
    var: usize,
    current: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if var == dim - 1 {
        current[var] = degree as u32;
        out.push(current.clone());
        current[var] = 0;
        return;
    }
    for e in (0..=degree).rev() {
        current[var] = e as u32;
        enumerate(dim, degree - e, var + 1, current, out);
    }
    current[var] = 0;
}

/// Homogeneous polynomial of one degree, tagged with its algebra.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedPoly<T, S: Space> {
    dim: usize,
    degree: usize,
    coeffs: Vec<T>,
    _space: PhantomData<S>,
}

impl<T: Scalar, S: Space> GradedPoly<T, S> {
    pub fn from_coeffs(dim: usize, degree: usize, coeffs: Vec<T>) -> Self {
        assert_eq!(
            coeffs.len(),
            monomial_count(dim, degree),
            "coefficient vector length must match the monomial count"
        );
        GradedPoly {
            dim,
            degree,
            coeffs,
            _space: PhantomData,
        }
    }

    pub fn zero(dim: usize, degree: usize) -> Self {
        GradedPoly {
            dim,
            degree,
            coeffs: vec![T::zero(); monomial_count(dim, degree)],
            _space: PhantomData,
        }
    }

    /// The constant polynomial 1 in degree 0.
    pub fn one(dim: usize) -> Self {
        GradedPoly {
            dim,
            degree: 0,
            coeffs: vec![T::one()],
            _space: PhantomData,
        }
    }

    /// The single monomial with the given exponent vector.
    pub fn monomial(dim: usize, exps: &[u32]) -> Self {
        assert_eq!(exps.len(), dim);
        let degree = exps.iter().map(|&e| e as usize).sum();
        let basis = MonomialBasis::new(dim, degree);
        let mut coeffs = vec![T::zero(); basis.len()];
        coeffs[basis.index_of(exps)] = T::one();
        GradedPoly {
            dim,
            degree,
            coeffs,
            _space: PhantomData,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(
            self.dim, other.dim,
            "polynomials live in different ambient spaces"
        );
        assert_eq!(
            self.degree, other.degree,
            "graded addition requires equal degrees"
        );
        let coeffs = self
            .coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        GradedPoly {
            dim: self.dim,
            degree: self.degree,
            coeffs,
            _space: PhantomData,
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a.clone() * c.clone()).collect();
        GradedPoly {
            dim: self.dim,
            degree: self.degree,
            coeffs,
            _space: PhantomData,
        }
    }

    /// Product within one algebra; degrees add.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.dim, other.dim,
            "polynomials live in different ambient spaces"
        );
        let degree = self.degree + other.degree;
        let left = MonomialBasis::new(self.dim, self.degree);
        let right = MonomialBasis::new(self.dim, other.degree);
        let target = MonomialBasis::new(self.dim, degree);
        let mut coeffs = vec![T::zero(); target.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let exps: Vec<u32> = left
                    .exponents(i)
                    .iter()
                    .zip(right.exponents(j).iter())
                    .map(|(p, q)| p + q)
                    .collect();
                let idx = target.index_of(&exps);
                coeffs[idx] = coeffs[idx].clone() + a.clone() * b.clone();
            }
        }
        GradedPoly {
            dim: self.dim,
            degree,
            coeffs,
            _space: PhantomData,
        }
    }

    /// Multiplies by a single monomial given by its exponent vector.
    pub fn mul_monomial(&self, exps: &[u32]) -> Self {
        assert_eq!(exps.len(), self.dim);
        let extra: usize = exps.iter().map(|&e| e as usize).sum();
        let degree = self.degree + extra;
        let source = MonomialBasis::new(self.dim, self.degree);
        let target = MonomialBasis::new(self.dim, degree);
        let mut coeffs = vec![T::zero(); target.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let shifted: Vec<u32> = source
                .exponents(i)
                .iter()
                .zip(exps.iter())
                .map(|(p, q)| p + q)
                .collect();
            coeffs[target.index_of(&shifted)] = a.clone();
        }
        GradedPoly {
            dim: self.dim,
            degree,
            coeffs,
            _space: PhantomData,
        }
    }

    /// Evaluates the polynomial at a point, coordinates in the same order as
    /// the variables.
    pub fn evaluate(&self, point: &[T]) -> T {
        assert_eq!(point.len(), self.dim);
        let basis = MonomialBasis::new(self.dim, self.degree);
        let mut acc = T::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut term = c.clone();
            for (e, p) in basis.exponents(i).iter().zip(point.iter()) {
                for _ in 0..*e {
                    term = term * p.clone();
                }
            }
            acc = acc + term;
        }
        acc
    }
}

impl<T: Scalar, S: Space> fmt::Display for GradedPoly<T, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let basis = MonomialBasis::new(self.dim, self.degree);
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, magnitude) = if c < &T::zero() {
                ("-", T::zero() - c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let exps = basis.exponents(i);
            let mut vars = String::new();
            for (v, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !vars.is_empty() {
                    vars.push('*');
                }
                vars.push(S::SYMBOL);
                vars.push_str(&(v + 1).to_string());
                if e > 1 {
                    vars.push('^');
                    vars.push_str(&e.to_string());
                }
            }
            if vars.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{vars}")?;
            } else {
                write!(f, "{magnitude}*{vars}")?;
            }
        }
        Ok(())
    }
}

/// Expands `(h1 v1 + ... + hl vl)^e` through the multinomial theorem.
///
/// The target algebra is chosen by the caller: vectors `h` in the ambient
/// space expand to operator polynomials, defining forms expand to solution
/// polynomials.
pub fn expand_power<T: Scalar, S: Space>(h: &[T], e: usize) -> Result<GradedPoly<T, S>, Error> {
    let dim = h.len();
    assert!(dim >= 1, "ambient dimension must be at least 1");
    if h.iter().all(|c| c.is_zero()) && e > 0 {
        return Err(Error::ZeroVector);
    }
    let basis = MonomialBasis::new(dim, e);
    let mut coeffs = vec![T::zero(); basis.len()];
    for (i, exps) in basis.iter().enumerate() {
        let mut c = scalar::multinomial::<T>(exps);
        for (hj, &ej) in h.iter().zip(exps.iter()) {
            if c.is_zero() {
                break;
            }
            for _ in 0..ej {
                c = c * hj.clone();
            }
        }
        coeffs[i] = c;
    }
    Ok(GradedPoly::from_coeffs(dim, e, coeffs))
}

/// Applies an operator polynomial to a solution polynomial by substituting
/// `d/dy_i` for `x_i`.
///
/// The result lives in degree `f.degree - op.degree`; an operator of larger
/// degree than the target is rejected so callers handle the truncation
/// explicitly.
pub fn apply_diff<T: Scalar>(
    op: &GradedPoly<T, OperatorSpace>,
    f: &GradedPoly<T, SolutionSpace>,
) -> Result<GradedPoly<T, SolutionSpace>, Error> {
    assert_eq!(
        op.dim(),
        f.dim(),
        "operator and solution must share the ambient space"
    );
    if op.degree() > f.degree() {
        return Err(Error::DegreeTooLarge {
            op_degree: op.degree(),
            poly_degree: f.degree(),
        });
    }
    let dim = f.dim();
    let result_degree = f.degree() - op.degree();
    let op_basis = MonomialBasis::new(dim, op.degree());
    let f_basis = MonomialBasis::new(dim, f.degree());
    let out_basis = MonomialBasis::new(dim, result_degree);
    let mut coeffs = vec![T::zero(); out_basis.len()];
    for (oi, oc) in op.coeffs().iter().enumerate() {
        if oc.is_zero() {
            continue;
        }
        let beta = op_basis.exponents(oi);
        for (gi, gamma) in out_basis.iter().enumerate() {
            let full: Vec<u32> = gamma.iter().zip(beta.iter()).map(|(g, b)| g + b).collect();
            let fc = &f.coeffs()[f_basis.index_of(&full)];
            if fc.is_zero() {
                continue;
            }
            // d^beta y^(gamma+beta) = (gamma+beta)!/gamma! * y^gamma
            let mut factor = T::one();
            for (&g, &b) in gamma.iter().zip(beta.iter()) {
                for t in 1..=b {
                    factor = factor * scalar::from_usize::<T>((g + t) as usize);
                }
            }
            coeffs[gi] = coeffs[gi].clone() + oc.clone() * fc.clone() * factor;
        }
    }
    Ok(GradedPoly::from_coeffs(dim, result_degree, coeffs))
}

/// Coefficient matrix of the degree-`d` slice of the ideal generated by
/// `ops`: one row per product `m * g` with `g` a generator of degree at most
/// `d` and `m` a monomial of the complementary degree.
///
/// Generators of degree above `d` contribute no rows; an empty generator
/// list yields the 0-row matrix over the degree-`d` monomial basis.
pub fn pairing_matrix<T: Scalar>(
    dim: usize,
    ops: &[GradedPoly<T, OperatorSpace>],
    d: usize,
) -> Matrix<T> {
    let mut rows = Vec::new();
    for g in ops {
        assert_eq!(g.dim(), dim, "generators must share the ambient space");
        if g.degree() > d {
            continue;
        }
        let multipliers = MonomialBasis::new(dim, d - g.degree());
        for m in multipliers.iter() {
            rows.push(g.mul_monomial(m).coeffs().to_vec());
        }
    }
    Matrix::from_rows(monomial_count(dim, d), rows)
}

/// Diagonal of the differentiation pairing in the monomial bases: entry
/// `alpha` is `alpha! = prod_i alpha_i!`.
pub fn apolar_weights<T: Scalar>(dim: usize, d: usize) -> Vec<T> {
    MonomialBasis::new(dim, d)
        .iter()
        .map(|exps| {
            let mut w = T::one();
            for &e in exps {
                w = w * scalar::factorial::<T>(e);
            }
            w
        })
        .collect()
}

/// Row-reduced basis of one graded piece of a subspace of polynomials,
/// tagged with the algebra it lives in.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedSubspace<T, S: Space> {
    ambient_dim: usize,
    degree: usize,
    basis: Matrix<T>,
    _space: PhantomData<S>,
}

impl<T: Scalar, S: Space> GradedSubspace<T, S> {
    pub fn new(ambient_dim: usize, degree: usize, basis: Matrix<T>) -> Self {
        assert_eq!(basis.cols(), monomial_count(ambient_dim, degree));
        GradedSubspace {
            ambient_dim,
            degree,
            basis,
            _space: PhantomData,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix<T> {
        &self.basis
    }

    pub fn contains(&self, p: &GradedPoly<T, S>) -> bool {
        assert_eq!(p.dim(), self.ambient_dim);
        assert_eq!(p.degree(), self.degree);
        self.basis.rowspace_contains(p.coeffs())
    }

    pub fn basis_polys(&self) -> Vec<GradedPoly<T, S>> {
        (0..self.basis.rows())
            .map(|i| {
                GradedPoly::from_coeffs(self.ambient_dim, self.degree, self.basis.row(i).to_vec())
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;
    use num_traits::{One, Zero};

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn qs(ns: &[i64]) -> Vec<Q> {
        ns.iter().map(|&n| q(n)).collect()
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomial_count(4, 0), 1);
        assert_eq!(monomial_count(4, 1), 4);
        assert_eq!(monomial_count(3, 3), 10);
        assert_eq!(monomial_count(2, 5), 6);
    }

    #[test]
    fn enumeration_is_graded_lex() {
        let basis = MonomialBasis::new(2, 2);
        let listed: Vec<&[u32]> = basis.iter().collect();
        assert_eq!(listed, vec![&[2, 0][..], &[1, 1], &[0, 2]]);
        let basis = MonomialBasis::new(3, 2);
        assert_eq!(basis.exponents(0), &[2, 0, 0]);
        assert_eq!(basis.exponents(basis.len() - 1), &[0, 0, 2]);
        assert_eq!(basis.index_of(&[1, 0, 1]), 2);
    }

    #[test]
    fn binomial_square() {
        let p: GradedPoly<Q, OperatorSpace> = expand_power(&qs(&[1, 1]), 2).unwrap();
        assert_eq!(p.coeffs(), &qs(&[1, 2, 1])[..]);
    }

    #[test]
    fn pure_power_of_last_variable() {
        let p: GradedPoly<Q, OperatorSpace> = expand_power(&qs(&[0, 0, 0, 1]), 2).unwrap();
        let basis = MonomialBasis::new(4, 2);
        for (i, c) in p.coeffs().iter().enumerate() {
            let expected = basis.exponents(i) == [0, 0, 0, 2];
            assert_eq!(!c.is_zero(), expected);
        }
    }

    #[test]
    fn degree_one_expansion_is_identity() {
        let p: GradedPoly<Q, SolutionSpace> = expand_power(&qs(&[1, -1]), 1).unwrap();
        assert_eq!(p.coeffs(), &qs(&[1, -1])[..]);
    }

    #[test]
    fn zero_vector_rejected() {
        let r: Result<GradedPoly<Q, OperatorSpace>, _> = expand_power(&qs(&[0, 0]), 2);
        assert_eq!(r.unwrap_err(), Error::ZeroVector);
        let ok: GradedPoly<Q, OperatorSpace> = expand_power(&qs(&[0, 0]), 0).unwrap();
        assert_eq!(ok.degree(), 0);
        assert!(ok.coeffs()[0].is_one());
    }

    #[test]
    fn single_and_double_differentiation() {
        let x4: GradedPoly<Q, OperatorSpace> = expand_power(&qs(&[0, 0, 0, 1]), 1).unwrap();
        let x4sq: GradedPoly<Q, OperatorSpace> = expand_power(&qs(&[0, 0, 0, 1]), 2).unwrap();
        let y4: GradedPoly<Q, SolutionSpace> = expand_power(&qs(&[0, 0, 0, 1]), 1).unwrap();
        let y4sq: GradedPoly<Q, SolutionSpace> = expand_power(&qs(&[0, 0, 0, 1]), 2).unwrap();

        assert!(matches!(
            apply_diff(&x4sq, &y4),
            Err(Error::DegreeTooLarge { .. })
        ));
        let one = apply_diff(&x4, &y4).unwrap();
        assert_eq!(one.coeffs(), &[q(1)][..]);
        let two = apply_diff(&x4sq, &y4sq).unwrap();
        assert_eq!(two.coeffs(), &[q(2)][..]);
    }

    #[test]
    fn mixed_second_derivative() {
        // (x1+x2)^2 applied to y1^2 y2 = 4 y1 + 2 y2
        let op: GradedPoly<Q, OperatorSpace> = expand_power(&qs(&[1, 1]), 2).unwrap();
        let f: GradedPoly<Q, SolutionSpace> = GradedPoly::monomial(2, &[2, 1]);
        let out = apply_diff(&op, &f).unwrap();
        assert_eq!(out.coeffs(), &qs(&[4, 2])[..]);
    }

    #[test]
    fn pairing_matrix_small_cases() {
        let x1: GradedPoly<Q, OperatorSpace> = expand_power(&qs(&[1, 0]), 1).unwrap();
        let m = pairing_matrix(2, &[x1], 1);
        assert_eq!(m.row_vecs(), vec![qs(&[1, 0])]);
        assert_eq!(m.kernel_basis(), vec![qs(&[0, 1])]);
    }

    #[test]
    fn pairing_matrix_internal_ideal() {
        // generators x1, x2, x3, x4^2 in four variables
        let mut gens: Vec<GradedPoly<Q, OperatorSpace>> = Vec::new();
        for i in 0..3 {
            let mut h = qs(&[0, 0, 0, 0]);
            h[i] = q(1);
            gens.push(expand_power(&h, 1).unwrap());
        }
        gens.push(expand_power(&qs(&[0, 0, 0, 1]), 2).unwrap());

        let deg1 = pairing_matrix(4, &gens, 1);
        assert_eq!(deg1.rank(), 3);
        assert_eq!(deg1.kernel_basis(), vec![qs(&[0, 0, 0, 1])]);

        let deg2 = pairing_matrix(4, &gens, 2);
        assert_eq!(deg2.rank(), 10);
        assert!(deg2.kernel_basis().is_empty());
    }

    #[test]
    fn expansion_evaluates_like_a_power() {
        let h = qs(&[2, -1, 3]);
        let p = qs(&[1, 5, -2]);
        for e in 0..=4 {
            let poly: GradedPoly<Q, OperatorSpace> = expand_power(&h, e).unwrap();
            let direct = {
                let dot = h
                    .iter()
                    .zip(p.iter())
                    .fold(Q::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
                let mut acc = Q::one();
                for _ in 0..e {
                    acc *= dot.clone();
                }
                acc
            };
            assert_eq!(poly.evaluate(&p), direct);
        }
    }

    #[test]
    fn gram_matrix_is_factorial_diagonal() {
        for dim in 1..=3usize {
            for d in 0..=4usize {
                let basis = MonomialBasis::new(dim, d);
                let weights = apolar_weights::<Q>(dim, d);
                for (i, alpha) in basis.iter().enumerate() {
                    for (j, beta) in basis.iter().enumerate() {
                        let op: GradedPoly<Q, OperatorSpace> = GradedPoly::monomial(dim, alpha);
                        let f: GradedPoly<Q, SolutionSpace> = GradedPoly::monomial(dim, beta);
                        let paired = apply_diff(&op, &f).unwrap();
                        let value = paired.coeffs()[0].clone();
                        if i == j {
                            assert_eq!(value, weights[i]);
                        } else {
                            assert!(value.is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn display_forms() {
        let p: GradedPoly<Q, SolutionSpace> = expand_power(&qs(&[1, -1]), 1).unwrap();
        assert_eq!(p.to_string(), "y1 - y2");
        let sq: GradedPoly<Q, OperatorSpace> = expand_power(&qs(&[1, 1]), 2).unwrap();
        assert_eq!(sq.to_string(), "x1^2 + 2*x1*x2 + x2^2");
        let one: GradedPoly<Q, SolutionSpace> = GradedPoly::one(3);
        assert_eq!(one.to_string(), "1");
    }
}
