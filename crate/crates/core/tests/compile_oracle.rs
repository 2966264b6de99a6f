// Compiled automata against a direct recursive evaluation of the regex.

use neography::regex::Branch;
use neography::{CharClass, Score, StochasticRegex as R, WeightedAutomaton};
use proptest::prelude::*;

const ALPHABET: [char; 4] = ['a', 'b', 'c', 'd'];

/// Probability that `re` generates exactly `s`, straight from the generative semantics.
fn oracle(re: &R, s: &[char]) -> f64 {
    match re {
        R::Literal(c) => f64::from(u8::from(s == [*c])),
        R::Class(cls) => match s {
            [c] => cls.member_prob(*c),
            _ => 0.0,
        },
        R::Concat(children) => concat(children, s),
        R::Union(branches) => branches.iter().map(|Branch { p, node }| p * oracle(node, s)).sum(),
        R::Optional { p, node } => p * oracle(node, s) + if s.is_empty() { 1.0 - p } else { 0.0 },
        R::Repeat { p, node } => {
            // P(s) = (1-p)[s=""] + p·Σ_k P_node(s[..k])·P(s[k..]); the k = 0 term refers back
            // to P(s) itself and is solved for.
            let mut rest = if s.is_empty() { 1.0 - p } else { 0.0 };
            for k in 1..=s.len() {
                let head = oracle(node, &s[..k]);
                if head > 0.0 {
                    rest += p * head * oracle(re, &s[k..]);
                }
            }
            rest / (1.0 - p * oracle(node, &[]))
        }
    }
}

fn concat(children: &[R], s: &[char]) -> f64 {
    match children {
        [] => f64::from(u8::from(s.is_empty())),
        [only] => oracle(only, s),
        [first, rest @ ..] => (0..=s.len())
            .map(|k| {
                let h = oracle(first, &s[..k]);
                if h == 0.0 {
                    0.0
                } else {
                    h * concat(rest, &s[k..])
                }
            })
            .sum(),
    }
}

fn all_strings(max_len: usize) -> Vec<Vec<char>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|s: &Vec<char>| {
                ALPHABET.iter().map(move |&c| {
                    let mut t = s.clone();
                    t.push(c);
                    t
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-6 * b.max(1e-3)
}

fn leaf() -> impl Strategy<Value = R> {
    prop_oneof![
        prop::sample::select(ALPHABET.to_vec()).prop_map(R::Literal),
        prop::sample::subsequence(ALPHABET.to_vec(), 1..=4).prop_map(|m| R::Class(CharClass::new("T", m).unwrap())),
        (prop::sample::subsequence(ALPHABET.to_vec(), 1..=4), prop::collection::vec(0.1f64..1.0, 4)).prop_map(|(m, w)| {
            R::Class(CharClass::weighted("W", m.into_iter().zip(w)).unwrap())
        }),
    ]
}

fn regex() -> impl Strategy<Value = R> {
    leaf().prop_recursive(3, 16, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 1..=3).prop_map(R::Concat),
            prop::collection::vec((inner.clone(), 0.05f64..1.0), 2..=3).prop_map(|bs| {
                let z: f64 = bs.iter().map(|(_, w)| w).sum();
                R::Union(bs.into_iter().map(|(node, w)| Branch { p: w / z, node }).collect())
            }),
            (inner.clone(), 0.05f64..=0.5).prop_map(|(n, p)| R::repeat(n, p)),
            (inner, 0.0f64..=1.0).prop_map(|(n, p)| R::optional(n, p)),
        ]
    })
}

fn probability(a: &WeightedAutomaton, s: &[char]) -> f64 {
    a.probability(&s.iter().collect::<String>())
}

#[test]
fn literal_union_and_repeat_examples() {
    let a = WeightedAutomaton::compile(&R::lit('a')).unwrap();
    assert_eq!(a.score("a"), Score::Cost(0.0));
    assert_eq!(a.score("b"), Score::Reject);

    let u = WeightedAutomaton::compile(&R::union([(R::lit('a'), 0.5), (R::lit('b'), 0.5)])).unwrap();
    assert!(close(u.probability("a"), 0.5) && close(u.probability("b"), 0.5));
    assert_eq!(u.probability("c"), 0.0);

    let r = R::repeat(R::lit('c'), 0.5);
    let a = WeightedAutomaton::compile(&r).unwrap();
    let mut mass = 0.0;
    for n in 0..=6 {
        let s = "c".repeat(n);
        let p = a.probability(&s);
        assert!(close(p, 0.5f64.powi(n as i32) * 0.5));
        assert!(close(p, oracle(&r, &s.chars().collect::<Vec<_>>())));
        mass += p;
    }
    assert!(mass >= 0.99);
}

#[test]
fn nested_nullable_repeats_match_oracle() {
    // (a?)* and ((a|ε)* b)* stress epsilon cycles
    let cases = [
        R::repeat(R::optional(R::lit('a'), 0.5), 0.5),
        R::repeat(R::concat([R::repeat(R::optional(R::lit('a'), 0.3), 0.4), R::lit('b')]), 0.5),
        R::concat([R::optional(R::lit('a'), 0.0), R::repeat(R::repeat(R::lit('b'), 0.5), 0.5)]),
    ];
    for re in cases {
        let a = WeightedAutomaton::compile(&re).unwrap();
        assert!(a.is_stochastic(1e-9));
        for s in all_strings(5) {
            let (got, want) = (probability(&a, &s), oracle(&re, &s));
            assert!(close(got, want), "{re:?} on {s:?}: {got} vs {want}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn compiled_probability_matches_oracle(re in regex(), extra in prop::collection::vec(prop::collection::vec(prop::sample::select(ALPHABET.to_vec()), 5..=8), 40)) {
        let a = WeightedAutomaton::compile(&re).unwrap();
        prop_assert!(a.is_stochastic(1e-9));
        for s in all_strings(4).into_iter().chain(extra) {
            let (got, want) = (probability(&a, &s), oracle(&re, &s));
            prop_assert!(close(got, want), "{:?}: {} vs {}", s, got, want);
            if let Score::Cost(c) = a.score(&s.iter().collect::<String>()) {
                prop_assert!(c >= 0.0);
            }
        }
    }
}
