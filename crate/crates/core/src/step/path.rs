use num_traits::{One, Zero};

use super::{Partition, StepFunction};
use crate::error::{GyroError, Result};
use crate::gyro::Gyrogroup;
use crate::rational::Rational;
use crate::scalar::Real;

/// The path from `0•` to `f`: for `0 < t < 1` each interval `[aₖ, aₖ₊₁)` keeps
/// `f` on `[aₖ, b)` and is the identity on `[b, aₖ₊₁)`, where
/// `b = aₖ + t (aₖ₊₁ − aₖ)`.
pub fn path<F: Real>(f: &StepFunction<F>, t: &Rational) -> Result<StepFunction<F>> {
    if t < &Rational::zero() || t > &Rational::one() {
        return Err(GyroError::ParameterOutOfRange);
    }
    let g = f.instance();
    if t.is_zero() {
        return Ok(StepFunction::identity(g));
    }
    if t.is_one() {
        return Ok(f.clone());
    }
    let zero = g.identity();
    let mut points = Vec::with_capacity(2 * f.num_pieces() + 1);
    let mut values = Vec::with_capacity(2 * f.num_pieces());
    for (a, b, x) in f.pieces() {
        let split = a + t * (b - a);
        points.push(a.clone());
        points.push(split);
        values.push(*x);
        values.push(zero);
    }
    points.push(Rational::one());
    let partition = Partition::new(points).expect("0 < t < 1 splits every interval strictly inside");
    StepFunction::on_partition(g, partition, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gyro::{Element, GyroInstance};
    use crate::rational::{int, ratio};

    #[test]
    fn endpoints() {
        let g = GyroInstance::<f64>::cyclic(5).unwrap();
        let f = StepFunction::from_parts(&g, vec![Element::Label(2), Element::Label(3)], &[ratio(1, 2)]).unwrap();
        assert_eq!(path(&f, &int(0)).unwrap(), StepFunction::identity(&g));
        assert_eq!(path(&f, &int(1)).unwrap(), f);
        assert_eq!(path(&f, &ratio(3, 2)), Err(GyroError::ParameterOutOfRange));
        assert_eq!(path(&f, &ratio(-1, 2)), Err(GyroError::ParameterOutOfRange));
    }

    #[test]
    fn constant_at_half() {
        let g = GyroInstance::<f64>::cyclic(5).unwrap();
        let f = StepFunction::constant(&g, Element::Label(4)).unwrap();
        let p = path(&f, &ratio(1, 2)).unwrap();
        assert_eq!(p.breakpoints(), &[int(0), ratio(1, 2), int(1)]);
        assert_eq!(p.values(), &[Element::Label(4), Element::Label(0)]);
    }

    #[test]
    fn two_pieces_at_half() {
        let g = GyroInstance::<f64>::cyclic(5).unwrap();
        let f = StepFunction::from_parts(&g, vec![Element::Label(2), Element::Label(3)], &[ratio(1, 2)]).unwrap();
        let p = path(&f, &ratio(1, 2)).unwrap();
        assert_eq!(p.breakpoints(), &[int(0), ratio(1, 4), ratio(1, 2), ratio(3, 4), int(1)]);
        assert_eq!(
            p.values(),
            &[Element::Label(2), Element::Label(0), Element::Label(3), Element::Label(0)]
        );
    }
}
