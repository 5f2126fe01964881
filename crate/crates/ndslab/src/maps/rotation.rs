//! Circle rotations with exact rational angles, plus tagged high-precision
//! surrogates for irrational rotation numbers.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rational::Rational;
use crate::space::{circle_metric, CirclePoint};

/// Whether a rotation fraction is genuinely rational or stands in for an
/// irrational number. The tag propagates through all arithmetic so that
/// exactness is never claimed for surrogate values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exactness {
    Rational,
    IrrationalApprox,
}

/// Rotation of the circumference-1 circle by `fraction` (mod 1).
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationMap {
    fraction: Rational,
    exactness: Exactness,
}

impl RotationMap {
    pub fn new(fraction: Rational) -> RotationMap {
        RotationMap { fraction: fraction.mod_one(), exactness: Exactness::Rational }
    }

    /// A rational surrogate standing in for an irrational rotation number.
    pub fn irrational_surrogate(fraction: Rational) -> RotationMap {
        RotationMap { fraction: fraction.mod_one(), exactness: Exactness::IrrationalApprox }
    }

    /// The golden rotation number `1/φ = φ - 1 ≈ 0.618...`, represented by
    /// the Fibonacci convergent `F_60/F_61` (denominator ≈ 2.5e12) and
    /// tagged as an approximation.
    pub fn golden_surrogate() -> RotationMap {
        let (f60, f61) = fibonacci_pair(60);
        RotationMap::irrational_surrogate(Rational::from_big(f60, f61))
    }

    pub fn identity() -> RotationMap {
        RotationMap::new(Rational::zero())
    }

    pub fn fraction(&self) -> &Rational {
        &self.fraction
    }

    pub fn exactness(&self) -> Exactness {
        self.exactness
    }

    pub fn is_irrational_tagged(&self) -> bool {
        self.exactness == Exactness::IrrationalApprox
    }

    pub fn evaluate(&self, x: &CirclePoint) -> CirclePoint {
        x.rotate(&self.fraction)
    }

    /// `k`-fold iterate: rotation by `k * fraction` (mod 1).
    pub fn power(&self, k: usize) -> RotationMap {
        let total = (&self.fraction * Rational::from_int(k as i64)).mod_one();
        RotationMap { fraction: total, exactness: self.exactness }
    }

    /// Composition of rotations adds fractions; the approximation tag is
    /// contagious.
    pub fn compose_after(&self, other: &RotationMap) -> RotationMap {
        let exactness = if self.is_irrational_tagged() || other.is_irrational_tagged() {
            Exactness::IrrationalApprox
        } else {
            Exactness::Rational
        };
        RotationMap { fraction: (&self.fraction + &other.fraction).mod_one(), exactness }
    }

    /// Sup-distance to another rotation: rotations are isometries, so the
    /// distance is the circle distance between the two fractions,
    /// independent of the base point.
    pub fn sup_distance(&self, other: &RotationMap) -> Rational {
        circle_metric(
            &CirclePoint::new(self.fraction.clone()),
            &CirclePoint::new(other.fraction.clone()),
        )
    }

    /// A nontrivial rotation has no fixed point; the identity fixes
    /// everything.
    pub fn has_fixed_points(&self) -> bool {
        self.fraction.is_zero()
    }

    /// Period of a rational rotation (denominator of the reduced fraction);
    /// `None` for irrational-tagged rotations, which are aperiodic by
    /// declaration.
    pub fn period(&self) -> Option<num_bigint::BigInt> {
        if self.is_irrational_tagged() {
            None
        } else {
            Some(self.fraction.denom().clone())
        }
    }

    /// Topological transitivity of a circle rotation is decided by the
    /// rotation number: irrational iff transitive. For surrogates this is
    /// the declared intent, not a computation on the stored rational.
    pub fn is_transitive(&self) -> bool {
        self.is_irrational_tagged()
    }
}

impl fmt::Debug for RotationMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exactness {
            Exactness::Rational => write!(f, "Rotation({})", self.fraction),
            Exactness::IrrationalApprox => write!(f, "Rotation(~{})", self.fraction),
        }
    }
}

/// `(F_k, F_{k+1})` with `F_1 = F_2 = 1`.
pub fn fibonacci_pair(k: u32) -> (num_bigint::BigInt, num_bigint::BigInt) {
    use num_bigint::BigInt;
    assert!(k >= 1);
    let mut a = BigInt::from(1); // F_1
    let mut b = BigInt::from(1); // F_2
    for _ in 1..k {
        let next = &a + &b;
        a = b;
        b = next;
    }
    (a, b)
}

/// Fibonacci convergent `F_k / F_{k+1}` of the golden rotation number.
pub fn golden_convergent(k: u32) -> Rational {
    let (num, den) = fibonacci_pair(k);
    Rational::from_big(num, den)
}
