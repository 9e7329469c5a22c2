use std::iter::Sum;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

/// A computed quantity with an absolute error bound. Exact paths carry
/// `err = 0`; quadrature carries its self-reported bound. Arithmetic
/// propagates errors to first order.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Measured {
    pub value: f64,
    pub err: f64,
}

impl Measured {
    pub fn new(value: f64, err: f64) -> Self {
        Measured {
            value,
            err: err.abs(),
        }
    }

    pub fn exact(value: f64) -> Self {
        Measured { value, err: 0.0 }
    }

    pub fn is_exact(&self) -> bool {
        self.err == 0.0
    }

    pub fn scale(self, c: f64) -> Self {
        Measured::new(c * self.value, c.abs() * self.err)
    }

    pub fn powi(self, k: i32) -> Self {
        let d = if k == 0 {
            0.0
        } else {
            k as f64 * self.value.abs().powi(k - 1)
        };
        Measured::new(self.value.powi(k), d.abs() * self.err)
    }

    pub fn powf(self, p: f64) -> Self {
        let v = self.value.max(0.0);
        let d = if v > 0.0 { p * v.powf(p - 1.0) } else { 0.0 };
        let err = if self.err > 0.0 && v == 0.0 {
            self.err.powf(p.min(1.0))
        } else {
            d.abs() * self.err
        };
        Measured::new(v.powf(p), err)
    }

    pub fn sqrt(self) -> Self {
        self.powf(0.5)
    }

    pub fn max(self, other: Self) -> Self {
        if other.value > self.value {
            other
        } else {
            self
        }
    }
}

impl Add for Measured {
    type Output = Measured;
    fn add(self, o: Measured) -> Measured {
        Measured::new(self.value + o.value, self.err + o.err)
    }
}

impl Sub for Measured {
    type Output = Measured;
    fn sub(self, o: Measured) -> Measured {
        Measured::new(self.value - o.value, self.err + o.err)
    }
}

impl Mul for Measured {
    type Output = Measured;
    fn mul(self, o: Measured) -> Measured {
        Measured::new(
            self.value * o.value,
            self.value.abs() * o.err + o.value.abs() * self.err + self.err * o.err,
        )
    }
}

impl Sum for Measured {
    fn sum<I: Iterator<Item = Measured>>(iter: I) -> Measured {
        iter.fold(Measured::exact(0.0), |a, b| a + b)
    }
}

impl From<f64> for Measured {
    fn from(v: f64) -> Self {
        Measured::exact(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn propagation() {
        let a = Measured::new(2.0, 0.1);
        let b = Measured::exact(3.0);
        assert_eq!((a + b).err, 0.1);
        assert!(((a * b).err - 0.3).abs() < 1e-15);
        assert!((a.powi(2).err - 0.4).abs() < 1e-15);
        assert!((a.sqrt().err - 0.1 / (2.0 * 2f64.sqrt())).abs() < 1e-15);
        assert!(b.powi(3).is_exact());
    }
}
