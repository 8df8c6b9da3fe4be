use proptest::prelude::*;
use sparsematch_core::matchers::{verify_ag, MTable};
use sparsematch_core::{Algorithm, Counters, Matcher, NoProbe, Pattern, SearchConfig, ShiftPolicy};

fn naive(p: &[u8], t: &[u8]) -> Vec<usize> {
    if p.len() > t.len() {
        return vec![];
    }
    (0..=t.len() - p.len()).filter(|&i| &t[i..i + p.len()] == p).collect()
}

fn over(sigma: u8, len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<u8>> {
    proptest::collection::vec((0..sigma).prop_map(|b| b'a' + b), len)
}

fn case() -> impl Strategy<Value = (Vec<u8>, Vec<u8>, u64)> {
    prop_oneof![Just(1u8), Just(2), Just(3), Just(4), Just(26)]
        .prop_flat_map(|sigma| (over(sigma, 1..12), over(sigma, 0..120), any::<u64>()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn safe_policy_is_complete((p, t, seed) in case()) {
        let m = Matcher::new(&p).unwrap();
        let expected = naive(&p, &t);
        for algo in [Algorithm::A, Algorithm::B, Algorithm::Naive, Algorithm::Horspool] {
            let cfg = SearchConfig::new(algo, ShiftPolicy::Safe, seed);
            let report = m.search(&t, &cfg);
            prop_assert_eq!(&report.occurrences, &expected, "{:?}", algo);
            // Counters never change the answer.
            prop_assert_eq!(m.find_all(&t, &cfg), expected.clone());
        }
    }

    #[test]
    fn paper_policy_is_sound((p, t, seed) in case()) {
        let m = Matcher::new(&p).unwrap();
        let expected = naive(&p, &t);
        for algo in [Algorithm::A, Algorithm::B] {
            let r = m.search(&t, &SearchConfig::new(algo, ShiftPolicy::Paper, seed));
            prop_assert!(r.occurrences.iter().all(|o| expected.contains(o)));
            prop_assert!(r.occurrences.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn events_bounded_and_reads_linear((p, t, seed) in case()) {
        let m = Matcher::new(&p).unwrap();
        for algo in [Algorithm::A, Algorithm::B] {
            for policy in [ShiftPolicy::Safe, ShiftPolicy::Paper] {
                let c = m.search(&t, &SearchConfig::new(algo, policy, seed)).counters;
                prop_assert!(c.events.total() as usize <= t.len());
                prop_assert!(c.shifts.keys().all(|&s| s >= 1));
                prop_assert_eq!(c.events.type3, c.verifications);
                prop_assert!(c.text_reads >= c.events.type1 + c.events.type2 + c.events.type3);
                if algo == Algorithm::A && policy == ShiftPolicy::Safe {
                    prop_assert!(c.text_reads as usize <= 4 * t.len() + 2 * p.len());
                }
            }
        }
    }

    #[test]
    fn algorithm_b_is_deterministic((p, t, seed) in case()) {
        let m = Matcher::new(&p).unwrap();
        let cfg = SearchConfig::new(Algorithm::B, ShiftPolicy::Paper, seed);
        prop_assert_eq!(m.search(&t, &cfg), m.search(&t, &cfg));
        let a = m.find_all(&t, &SearchConfig::new(Algorithm::A, ShiftPolicy::Paper, seed));
        prop_assert_eq!(m.find_all(&t, &cfg), a);
    }
}

/// Checks every recorded entry of a full M-table against the text.
fn assert_mtable_semantics(p: &[u8], t: &[u8], mtable: &MTable) {
    let n = p.len();
    for (j, k) in mtable.entries() {
        assert!(k <= n && k <= j + 1, "entry ({}, {}) out of range", j, k);
        assert_eq!(&t[j + 1 - k..=j], &p[n - k..], "M[{}] = {} for {:?} in {:?}", j, k, p, t);
        if k < n && j >= k {
            assert_ne!(t[j - k], p[n - k - 1], "M[{}] = {} is not maximal", j, k);
        }
    }
}

#[test]
fn ag_equals_naive_under_arbitrary_overlapping_invocations() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..10_000 {
        let sigma = rng.gen_range(1..=4u8);
        let n = rng.gen_range(1..=10);
        let m = rng.gen_range(n..=80);
        let p: Vec<u8> = (0..n).map(|_| b'a' + rng.gen_range(0..sigma)).collect();
        let mut t: Vec<u8> = (0..m).map(|_| b'a' + rng.gen_range(0..sigma)).collect();
        // Plant a few copies so that full matches and long partial matches occur.
        for _ in 0..rng.gen_range(0..3) {
            let at = rng.gen_range(0..=m - n);
            t[at..at + n].copy_from_slice(&p);
        }
        let pat = Pattern::new(&p).unwrap();
        let nprof = pat.n_profile();
        let mut ring = MTable::ring(n);
        let mut full = MTable::full(m);
        let mut start = 0;
        while start + n <= m {
            let expected = t[start..start + n] == p[..];
            let mut c = Counters::new();
            assert_eq!(verify_ag(&pat, &nprof, &mut ring, &t, start, &[], &mut c), expected);
            assert_eq!(verify_ag(&pat, &nprof, &mut full, &t, start, &[], &mut NoProbe), expected);
            assert!(c.text_reads as usize <= n);
            start += rng.gen_range(1..=n);
        }
        assert_mtable_semantics(&p, &t, &full);
    }
}

#[test]
fn mtable_semantics_exhaustive_binary_small() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
    for n in 1..=8u32 {
        for code in 0..(1u32 << n) {
            let p: Vec<u8> = (0..n).map(|b| if code >> b & 1 == 1 { b'b' } else { b'a' }).collect();
            let matcher = Matcher::new(&p).unwrap();
            let cfg = SearchConfig::default();
            // All binary texts of length 10, then random ones up to 64.
            let texts = (0..1u32 << 10)
                .map(|tc| (0..10).map(|b| if tc >> b & 1 == 1 { b'b' } else { b'a' }).collect::<Vec<u8>>())
                .chain((0..64).map(|_| {
                    let m = rng.gen_range(0..=64);
                    (0..m).map(|_| if rng.gen_bool(0.5) { b'b' } else { b'a' }).collect()
                }));
            for t in texts {
                let mut full = MTable::full(t.len());
                let found = matcher.sparse_search(&t, &cfg, &mut full, &mut NoProbe);
                assert_eq!(found, naive(&p, &t));
                assert_mtable_semantics(&p, &t, &full);
            }
        }
    }
}

#[test]
fn witness_trace() {
    let m = Matcher::new(b"cabab").unwrap();
    let t = b"cababcabab";
    let safe = m.search(t, &SearchConfig::new(Algorithm::A, ShiftPolicy::Safe, 0));
    assert_eq!(safe.occurrences, naive(b"cabab", t));
    let paper = m.search(t, &SearchConfig::new(Algorithm::A, ShiftPolicy::Paper, 0));
    assert_eq!(paper.occurrences, [0]);
}

#[test]
fn unary_adversarial_reads_stay_linear() {
    for n in [2usize, 8, 32] {
        let p = vec![b'a'; n];
        let t = vec![b'a'; 100_000];
        let m = Matcher::new(&p).unwrap();
        let r = m.search(&t, &SearchConfig::default());
        assert_eq!(r.occurrences.len(), t.len() - n + 1);
        assert!(r.counters.text_reads as usize <= 4 * t.len() + 2 * n);
    }
}
