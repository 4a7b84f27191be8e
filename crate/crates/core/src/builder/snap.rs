use crate::exactgeom::{Rational, RationalVector};
use num::{BigInt, Zero};

/// Replaces each point by `round(m·v)/m` for the first `m ∈ 1..=max_denominator` whose lattice
/// distance `‖m·v − round(m·v)‖₂` is below `max_distance`; other points pass through.
///
/// Rounding is to the nearest lattice point (ties away from zero).
pub fn rational_snap(
    points: &[RationalVector],
    max_denominator: u64,
    max_distance: &Rational,
) -> Vec<RationalVector> {
    assert!(max_denominator >= 1, "max_denominator must be positive");
    assert!(
        *max_distance > Rational::zero(),
        "max_distance must be positive"
    );
    let eps2 = max_distance * max_distance;
    points
        .iter()
        .map(|v| {
            for m in 1..=max_denominator {
                let mq = Rational::from_integer(BigInt::from(m));
                let scaled = v.scale(&mq);
                let rounded: Vec<Rational> = scaled.iter().map(|x| x.round()).collect();
                let dist2 = scaled
                    .iter()
                    .zip(&rounded)
                    .fold(Rational::zero(), |acc, (x, r)| {
                        let d = x - r;
                        acc + &d * &d
                    });
                if dist2 < eps2 {
                    return RationalVector::new(rounded.into_iter().map(|r| r / &mq).collect());
                }
            }
            v.clone()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::{rat, ratio};
    use num::BigInt;

    #[test]
    fn near_half_snaps_at_two() {
        let tiny = Rational::new(BigInt::from(1), BigInt::from(10).pow(9));
        let v = RationalVector::new(vec![ratio(1, 2) + tiny, ratio(1, 2)]);
        let out = rational_snap(&[v], 2, &ratio(1, 1000));
        assert_eq!(
            out,
            vec![RationalVector::new(vec![ratio(1, 2), ratio(1, 2)])]
        );
    }

    #[test]
    fn integral_unchanged() {
        let v = RationalVector::from_ints(&[3, -1]);
        assert_eq!(
            rational_snap(std::slice::from_ref(&v), 12, &ratio(1, 1_000_000)),
            vec![v]
        );
    }

    #[test]
    fn thirds_not_reachable_with_two() {
        let v = RationalVector::new(vec![ratio(1, 3), ratio(2, 3)]);
        assert_eq!(
            rational_snap(std::slice::from_ref(&v), 2, &ratio(1, 1000)),
            vec![v.clone()]
        );
        assert_eq!(
            rational_snap(std::slice::from_ref(&v), 3, &ratio(1, 1000)),
            vec![v]
        );
    }

    #[test]
    fn just_below_integer_rounds_up() {
        let v = RationalVector::new(vec![rat(1) - ratio(1, 10_000_000), rat(0)]);
        assert_eq!(
            rational_snap(&[v], 1, &ratio(1, 1_000_000)),
            vec![RationalVector::from_ints(&[1, 0])]
        );
    }
}
