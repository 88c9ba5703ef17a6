//! Dense univariate polynomials over any numeric ring.
//!
//! Coefficients are stored in ascending order. The coefficient type only needs
//! `num_traits::Num + Clone`, so the same code runs over `f64` and over exact
//! rationals such as `num_rational::Ratio<i64>`.

use std::ops::{Add, Mul};

use num_traits::{Num, ToPrimitive};

#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<C> {
    coeffs: Vec<C>,
}

impl<C: Num + Clone> Polynomial<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(C::zero());
        }
        Self { coeffs }
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `z`.
    pub fn identity() -> Self {
        Self::new(vec![C::zero(), C::one()])
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Degree; the zero polynomial reports degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn leading(&self) -> &C {
        self.coeffs.last().expect("non-empty")
    }

    /// Horner evaluation.
    pub fn eval(&self, z: C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc * z.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::constant(C::zero());
        }
        let mut k = C::zero();
        let out = self
            .coeffs
            .iter()
            .skip(1)
            .map(|c| {
                k = k.clone() + C::one();
                c.clone() * k.clone()
            })
            .collect();
        Self::new(out)
    }

    pub fn scale(&self, s: C) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    /// Coefficient-wise conversion into another ring.
    pub fn map<D: Num + Clone>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }
}

impl<C: Num + Clone + ToPrimitive> Polynomial<C> {
    pub fn to_f64(&self) -> Polynomial<f64> {
        self.map(|c| c.to_f64().unwrap_or(f64::NAN))
    }
}

impl<C: Num + Clone> Add for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn add(self, rhs: Self) -> Polynomial<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let out = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_else(C::zero);
                let b = rhs.coeffs.get(i).cloned().unwrap_or_else(C::zero);
                a + b
            })
            .collect();
        Polynomial::new(out)
    }
}

impl<C: Num + Clone> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn mul(self, rhs: Self) -> Polynomial<C> {
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}
