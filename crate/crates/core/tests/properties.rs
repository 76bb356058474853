// Copyright 2026 The gqam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use gqam::format::{function_to_string, parse_function};
use gqam::random::{self, GeneratorShape};
use gqam::{
    compare, envelope_means, frak_generator, frak_m, quasi_mean, reduce_from_n,
    weighted_quasi_mean, Generator, Rational, Relation, Weights,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Q = Rational;

fn setup(seed: u64, n: usize) -> (Generator, Vec<Q>, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = random::generator(&mut rng, GeneratorShape::default());
    let x = random::points(&mut rng, &f, n);
    (f, x, rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn inverse_undoes_f(seed in any::<u64>()) {
        let (f, x, _) = setup(seed, 4);
        for v in x {
            prop_assert_eq!(f.inverse_at(&f.eval(&v).unwrap()).unwrap(), v);
        }
    }

    #[test]
    fn inverse_lands_between_limits(seed in any::<u64>()) {
        let (f, _, mut rng) = setup(seed, 0);
        let u = random::point_in(&mut rng, &f.conv_range());
        let p = f.inverse_at(&u).unwrap();
        let (l, _, r) = f.limits(&p).unwrap();
        prop_assert!(l <= u && u <= r);
    }

    #[test]
    fn mean_lies_between_extremes(seed in any::<u64>(), n in 1usize..8) {
        let (f, x, _) = setup(seed, n);
        let m = quasi_mean(&f, &x).unwrap();
        prop_assert!(x.iter().min().unwrap() <= &m && &m <= x.iter().max().unwrap());
    }

    #[test]
    fn mean_is_symmetric(seed in any::<u64>(), n in 2usize..7, rot in 0usize..6) {
        let (f, x, _) = setup(seed, n);
        let mut y = x.clone();
        y.rotate_left(rot % n);
        y.swap(0, n - 1);
        prop_assert_eq!(quasi_mean(&f, &x).unwrap(), quasi_mean(&f, &y).unwrap());
    }

    #[test]
    fn mean_is_reflexive(seed in any::<u64>(), n in 1usize..7) {
        let (f, x, _) = setup(seed, 1);
        let diag = vec![x[0].clone(); n];
        prop_assert_eq!(quasi_mean(&f, &diag).unwrap(), x[0].clone());
    }

    #[test]
    fn equal_weights_give_the_plain_mean(seed in any::<u64>(), n in 1usize..7, w in 1i64..9) {
        let (f, x, _) = setup(seed, n);
        let weights = Weights::new(vec![Q::from_integer(w.into()); n]).unwrap();
        prop_assert_eq!(weighted_quasi_mean(&f, &x, &weights).unwrap(), quasi_mean(&f, &x).unwrap());
    }

    #[test]
    fn envelope_means_bracket_the_mean(seed in any::<u64>(), n in 1usize..7) {
        let (f, x, _) = setup(seed, n);
        let (lo, hi) = envelope_means(&f, &x).unwrap();
        let m = quasi_mean(&f, &x).unwrap();
        prop_assert!(lo <= m && m <= hi);
    }

    #[test]
    fn reduction_recovers_the_mean(seed in any::<u64>(), m in 1usize..4, extra in 1usize..3) {
        let (f, x, _) = setup(seed, m);
        let want = quasi_mean(&f, &x).unwrap();
        prop_assert_eq!(reduce_from_n(&f, &x, m + extra).unwrap(), (want.clone(), want));
    }

    #[test]
    fn comparison_is_dual(seed in any::<u64>(), comparable in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (f, g) = if comparable {
            random::comparable_pair::<Q, _>(&mut rng)
        } else {
            random::incomparable_pair::<Q, _>(&mut rng)
        };
        let (ab, ba) = (compare(&f, &g).unwrap().relation, compare(&g, &f).unwrap().relation);
        let mirrored = match ab {
            Relation::LessEq => Relation::GreaterEq,
            Relation::GreaterEq => Relation::LessEq,
            r => r,
        };
        prop_assert_eq!(ba, mirrored);
    }

    #[test]
    fn affine_images_generate_the_same_mean(seed in any::<u64>(), a in 1i64..20, b in -20i64..20) {
        let (f, _, _) = setup(seed, 0);
        let g = f.affine_image(&Q::new(a.into(), 7.into()), &Q::from_integer(b.into())).unwrap();
        prop_assert_eq!(compare(&f, &g).unwrap().relation, Relation::Equal);
        prop_assert_eq!(compare(&f, &f).unwrap().relation, Relation::Equal);
    }

    #[test]
    fn spec_documents_round_trip(seed in any::<u64>()) {
        let (f, _, _) = setup(seed, 0);
        prop_assert_eq!(parse_function::<Q>(&function_to_string(&f)).unwrap(), f);
    }

    #[test]
    fn zero_spanning_mean_is_represented(
        seed in any::<u64>(),
        a in 1i64..9,
        b in 1i64..9,
        n in 2usize..5,
    ) {
        let (a, b) = (-Q::new(a.into(), 3.into()), Q::new(b.into(), 2.into()));
        let f = frak_generator(&a, &b, n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x: Vec<Q> = (0..n).map(|_| random::point_in(&mut rng, f.interval())).collect();
        prop_assert_eq!(quasi_mean(&f, &x).unwrap(), frak_m(&x).unwrap());
    }
}
