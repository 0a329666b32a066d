use crate::alphabets::Name;
use crate::machines::{ContinuousMachine, Machine, Modulus, MonotoneMachine};
use crate::scalar::ExactScalar;
use crate::spaces::KleeneanValue;

/// Sign into the Kleeneans. Output question `k` gets
/// `Some(0 < φ(2^-k))` if `|φ(2^-k)| > 3·2^-k`, else `None`, at every
/// effort; the modulus is `[2^-k]`.
///
/// On a name of `x` the output is a monotone Kleenean name: a hit at `k`
/// gives `|x| > 2·2^-k`, hence `|φ(2^-(k+1))| > 3·2^-(k+1)` with the same sign.
pub fn sign_machine<S: ExactScalar>() -> MonotoneMachine<S, S, usize, Option<bool>> {
    let machine = Machine::new(|phi: &dyn Name<S, S>, _, k: &usize| {
        let t = S::pow2(-(*k as i64));
        let a = phi.answer(&t);
        Some((a.abs() > S::from_int(3) * t).then(|| a.is_positive()))
    });
    let modulus = Modulus::new(|_: &dyn Name<S, S>, _, k: &usize| vec![S::pow2(-(*k as i64))]);
    MonotoneMachine::assume_monotone(ContinuousMachine::new(machine, modulus))
}

/// `x > 0 ↦ true_K`, `x < 0 ↦ false_K`, `0 ↦ ⊥_K`.
pub fn sign_kleenean<S: ExactScalar>(x: &S) -> KleeneanValue {
    if x.is_zero() {
        KleeneanValue::Bottom
    } else {
        KleeneanValue::from(x.is_positive())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabets::NameOracle;
    use crate::machines::{check_modulus, check_monotone, check_self_modulating};
    use crate::spaces::{exact_name, grid_name};
    use crate::Rational;
    use num_traits::Signed;

    #[test]
    fn thresholds_for_one_and_zero() {
        let m = sign_machine::<Rational>();
        let one = exact_name(Rational::from_int(1));
        assert_eq!(m.run(&one, 0, &0), Some(None));
        assert_eq!(m.run(&one, 0, &1), Some(None));
        for k in 2..=64 {
            assert_eq!(m.run(&one, 0, &k), Some(Some(true)));
        }
        let zero = exact_name(Rational::from_int(0));
        assert!((0..500).all(|k| m.run(&zero, 7, &k) == Some(None)));
    }

    #[test]
    fn output_is_monotone_on_small_powers_of_two() {
        let m = sign_machine::<Rational>();
        for k in 0..=20 {
            for x in [Rational::pow2(-k), -Rational::pow2(-k)] {
                for phi in [exact_name(x.clone()), grid_name(x.clone())] {
                    let out: Vec<Option<bool>> = (0..=k as usize + 8).map(|j| m.run(&phi, 0, &j).unwrap()).collect();
                    let first = out.iter().position(Option::is_some).expect("sign decided");
                    assert!(out[first..].iter().all(|b| *b == Some(x.is_positive())), "x={x}");
                }
            }
        }
    }

    #[test]
    fn invariants_on_sampled_names() {
        let m = sign_machine::<Rational>();
        let names: Vec<NameOracle<Rational, Rational>> = [(1, 1), (-1, 1), (1, 1000), (0, 1), (-5, 3)]
            .into_iter()
            .flat_map(|(p, d)| {
                let x = Rational::ratio(p, d);
                [exact_name(x.clone()), grid_name(x)]
            })
            .collect();
        let ks: Vec<usize> = (0..16).collect();
        assert!(check_modulus(m.continuous(), &names, 2, &ks).is_ok());
        assert!(check_self_modulating(m.continuous(), &names, 2, &ks).is_ok());
        assert!(check_monotone(&m, &names, 4, &ks).is_ok());
    }

    #[test]
    fn sign_of_points() {
        assert_eq!(sign_kleenean(&Rational::ratio(-1, 1000)), KleeneanValue::False);
        assert_eq!(sign_kleenean(&Rational::from_int(0)), KleeneanValue::Bottom);
        assert_eq!(sign_kleenean(&Rational::from_int(3)), KleeneanValue::True);
    }
}
