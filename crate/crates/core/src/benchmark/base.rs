use serde::{Deserialize, Serialize};

use crate::{Error, Result, Scalar};

/// The six base functions the benchmark family is composed from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BaseFunction {
    Sphere,
    Elliptic,
    Rastrigin,
    Ackley,
    Schwefel12,
    Rosenbrock,
}

impl BaseFunction {
    pub const ALL: [BaseFunction; 6] = [
        BaseFunction::Sphere,
        BaseFunction::Elliptic,
        BaseFunction::Rastrigin,
        BaseFunction::Ackley,
        BaseFunction::Schwefel12,
        BaseFunction::Rosenbrock,
    ];

    /// Search box conventionally paired with the function.
    pub fn bounds(self) -> (f64, f64) {
        match self {
            BaseFunction::Rastrigin => (-5.0, 5.0),
            BaseFunction::Ackley => (-32.0, 32.0),
            _ => (-100.0, 100.0),
        }
    }

    /// Point in transformed space where the function attains zero.
    pub fn optimum_coordinate(self) -> f64 {
        match self {
            BaseFunction::Rosenbrock => 1.0,
            _ => 0.0,
        }
    }

    fn min_len(self) -> usize {
        match self {
            BaseFunction::Rosenbrock | BaseFunction::Schwefel12 => 2,
            _ => 1,
        }
    }

    /// Evaluates the base function at `z` without any transformation.
    pub fn eval<T: Scalar>(self, z: &[T]) -> Result<T> {
        if z.len() < self.min_len() {
            return Err(Error::domain(format!(
                "{self:?} needs at least {} coordinates, got {}",
                self.min_len(),
                z.len()
            )));
        }
        if let Some(i) = z.iter().position(|v| !v.is_finite()) {
            return Err(Error::domain(format!(
                "non-finite coordinate {} at index {i}",
                z[i]
            )));
        }
        Ok(self.eval_unchecked(z))
    }

    pub(crate) fn eval_unchecked<T: Scalar>(self, z: &[T]) -> T {
        match self {
            BaseFunction::Sphere => sphere(z),
            BaseFunction::Elliptic => elliptic(z),
            BaseFunction::Rastrigin => rastrigin(z),
            BaseFunction::Ackley => ackley(z),
            BaseFunction::Schwefel12 => schwefel12(z),
            BaseFunction::Rosenbrock => rosenbrock(z),
        }
    }
}

fn sphere<T: Scalar>(z: &[T]) -> T {
    z.iter().fold(T::zero(), |acc, &v| acc + v * v)
}

// sum_i (1e6)^((i-1)/(D-1)) z_i^2
fn elliptic<T: Scalar>(z: &[T]) -> T {
    let d = z.len();
    if d == 1 {
        return z[0] * z[0];
    }
    let denom = (d - 1) as f64;
    z.iter().enumerate().fold(T::zero(), |acc, (i, &v)| {
        acc + T::of(1e6f64.powf(i as f64 / denom)) * v * v
    })
}

fn rastrigin<T: Scalar>(z: &[T]) -> T {
    let ten = T::of(10.0);
    let two_pi = T::of(2.0 * std::f64::consts::PI);
    z.iter().fold(T::zero(), |acc, &v| {
        acc + v * v - ten * (two_pi * v).cos() + ten
    })
}

fn ackley<T: Scalar>(z: &[T]) -> T {
    let n = T::of(z.len() as f64);
    let two_pi = T::of(2.0 * std::f64::consts::PI);
    let sq = sphere(z) / n;
    let cos = z.iter().fold(T::zero(), |acc, &v| acc + (two_pi * v).cos()) / n;
    let e = T::of(std::f64::consts::E);
    let twenty = T::of(20.0);
    // grouped so that both brackets vanish exactly at the origin
    let value = twenty * (T::one() - (T::of(-0.2) * sq.sqrt()).exp()) + (e - cos.exp());
    value.max(T::zero())
}

fn schwefel12<T: Scalar>(z: &[T]) -> T {
    let mut partial = T::zero();
    let mut acc = T::zero();
    for &v in z {
        partial = partial + v;
        acc = acc + partial * partial;
    }
    acc
}

fn rosenbrock<T: Scalar>(z: &[T]) -> T {
    let hundred = T::of(100.0);
    z.windows(2).fold(T::zero(), |acc, w| {
        let a = w[0] * w[0] - w[1];
        let b = w[0] - T::one();
        acc + hundred * a * a + b * b
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn zero_at_known_optima() {
        let zeros = vec![0.0f64; 7];
        for f in [
            BaseFunction::Sphere,
            BaseFunction::Elliptic,
            BaseFunction::Rastrigin,
            BaseFunction::Ackley,
            BaseFunction::Schwefel12,
        ] {
            assert_eq!(f.eval(&zeros).unwrap(), 0.0, "{f:?}");
        }
        assert_eq!(BaseFunction::Rosenbrock.eval(&[1.0f64; 7]).unwrap(), 0.0);
    }

    #[test]
    fn elliptic_two_dims() {
        // (1e6)^0 * 1 + (1e6)^1 * 1
        assert_eq!(
            BaseFunction::Elliptic.eval(&[1.0f64, 1.0]).unwrap(),
            1.0 + 1e6
        );
    }

    #[test]
    fn hand_values() {
        assert_eq!(
            BaseFunction::Schwefel12.eval(&[1.0f64, 2.0, 3.0]).unwrap(),
            1.0 + 9.0 + 36.0
        );
        // 100 (0 - 1)^2 + (0 - 1)^2
        assert_eq!(
            BaseFunction::Rosenbrock.eval(&[0.0f64, 1.0]).unwrap(),
            101.0
        );
        let r = BaseFunction::Rastrigin.eval(&[0.5f64]).unwrap();
        assert!((r - (0.25 + 20.0)).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(BaseFunction::Sphere.eval(&[f64::NAN, 0.0]).is_err());
        assert!(BaseFunction::Ackley.eval(&[f64::INFINITY]).is_err());
        assert!(BaseFunction::Rosenbrock.eval(&[1.0f64]).is_err());
        assert!(BaseFunction::Sphere.eval::<f64>(&[]).is_err());
    }

    #[test]
    fn f32_agrees_with_f64() {
        let z = [0.3f64, -1.2, 2.5, 0.01];
        let z32: Vec<f32> = z.iter().map(|&v| v as f32).collect();
        for f in BaseFunction::ALL {
            let a = f.eval(&z).unwrap();
            let b = f.eval(&z32).unwrap() as f64;
            assert!(
                (a - b).abs() <= 1e-4 * a.abs().max(1.0),
                "{f:?}: {a} vs {b}"
            );
        }
    }

    proptest! {
        #[test]
        fn non_negative_within_bounds(z in prop::collection::vec(-5.0f64..5.0, 2..20)) {
            for f in BaseFunction::ALL {
                let v = f.eval(&z).unwrap();
                prop_assert!(v.is_finite() && v >= 0.0, "{:?} -> {}", f, v);
            }
        }

        #[test]
        fn elliptic_later_coordinates_weigh_more(t in -100.0f64..100.0) {
            prop_assume!(t != 0.0);
            let hi = BaseFunction::Elliptic.eval(&[0.0, t]).unwrap();
            let lo = BaseFunction::Elliptic.eval(&[t, 0.0]).unwrap();
            prop_assert!(hi >= lo);
        }
    }
}
