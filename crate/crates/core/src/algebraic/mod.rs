//! Integer polynomials, algebraic numbers given by a defining polynomial, the
//! Kronecker root-of-unity test and certified complex root isolation.

pub mod cyclotomic;
pub mod irreducible;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use crate::poly::IntPolynomial;
pub use crate::roots::{count_roots_in_box, isolate_roots, ComplexBox, RootIsolator};
pub use cyclotomic::{cyclotomic, root_of_unity_order};
pub use irreducible::{check_irreducible, IrreducibilityCheck};

pub fn primitive_part(f: &IntPolynomial) -> Result<IntPolynomial> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(f.primitive_part())
}

pub fn is_squarefree(f: &IntPolynomial) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(f.is_squarefree())
}

/// A root of `f` is an algebraic integer iff the primitive part of `f` is monic
/// (valid for irreducible `f`).
pub fn is_algebraic_integer(f: &IntPolynomial) -> bool {
    !f.is_zero() && f.primitive_part().leading() == BigInt::from(1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Irreducibility {
    Proven,
    Unchecked,
}

/// An algebraic number: a root of `defining_poly`, optionally pinned down by a
/// box that isolates it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicNumberSpec {
    defining_poly: IntPolynomial,
    root_selector: Option<ComplexBox>,
    irreducibility: Irreducibility,
}

impl AlgebraicNumberSpec {
    /// Takes the primitive part of `f` and tries to prove it irreducible.
    pub fn new(f: &IntPolynomial) -> Result<Self> {
        let mut spec = Self::unchecked(f)?;
        if check_irreducible(&spec.defining_poly) == IrreducibilityCheck::Proven {
            spec.irreducibility = Irreducibility::Proven;
        }
        Ok(spec)
    }

    /// Skips the irreducibility check.
    pub fn unchecked(f: &IntPolynomial) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if f.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        Ok(AlgebraicNumberSpec {
            defining_poly: f.primitive_part(),
            root_selector: None,
            irreducibility: Irreducibility::Unchecked,
        })
    }

    /// Attaches a selector box, which must contain exactly one root.
    pub fn with_selector(mut self, bx: ComplexBox) -> Result<Self> {
        let n = count_roots_in_box(&self.defining_poly, &bx)?;
        if n != 1 {
            return Err(Error::InvalidSelector(n));
        }
        self.root_selector = Some(bx);
        Ok(self)
    }

    pub fn rational(value: &crate::rational::Q) -> Self {
        let f = IntPolynomial::new(vec![-value.numer().clone(), value.denom().clone()]);
        AlgebraicNumberSpec {
            defining_poly: f.primitive_part(),
            root_selector: None,
            irreducibility: Irreducibility::Proven,
        }
    }

    /// Rebuilds a spec from stored parts; the selector is rechecked, the
    /// irreducibility claim is taken as given.
    pub fn from_parts(
        f: &IntPolynomial,
        root_selector: Option<ComplexBox>,
        irreducibility: Irreducibility,
    ) -> Result<Self> {
        let mut spec = Self::unchecked(f)?;
        spec.irreducibility = irreducibility;
        match root_selector {
            Some(bx) => spec.with_selector(bx),
            None => Ok(spec),
        }
    }

    pub fn defining_poly(&self) -> &IntPolynomial {
        &self.defining_poly
    }

    pub fn root_selector(&self) -> Option<&ComplexBox> {
        self.root_selector.as_ref()
    }

    pub fn irreducibility(&self) -> Irreducibility {
        self.irreducibility
    }

    /// Degree of the defining polynomial; the degree of the number itself when
    /// irreducibility is proven.
    pub fn degree(&self) -> usize {
        self.defining_poly.degree()
    }

    pub fn is_one(&self) -> bool {
        self.defining_poly == IntPolynomial::from_i64(&[-1, 1])
    }
}
