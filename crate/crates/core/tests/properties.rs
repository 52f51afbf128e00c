mod common;

use proptest::prelude::*;

use ppbackoff::corpus::extract::bracketing_for;
use ppbackoff::corpus::{classify_vp, parse_bracketed_tree, read_tuple_file, write_tuple_file};
use ppbackoff::counts::{load_model, save_model, PatternMask, Table};
use ppbackoff::estimator::{estimate, AttachmentDecision, BackoffLevel};
use ppbackoff::eval::{evaluate, stratified_split, SplitSpec};
use ppbackoff::{Configuration, FrequencyDatabase, Heads, Kind, Normalization, TupleRecord};

use common::synth;

fn corpus(seed: u64, max_records: usize) -> (synth::Vocab, Vec<TupleRecord>) {
    synth::random_corpus(&mut synth::rng(seed), max_records, 6)
}

fn build(records: &[TupleRecord]) -> FrequencyDatabase {
    FrequencyDatabase::build(records, Normalization::Lower).unwrap()
}

fn probes(vocab: &synth::Vocab, seed: u64, records: &[TupleRecord]) -> Vec<Heads> {
    let mut rng = synth::rng(seed ^ 0x9e37);
    let mut out: Vec<Heads> = (0..30).map(|i| vocab.heads(&mut rng, Kind::ALL[i % 3])).collect();
    out.extend(records.iter().take(10).map(|r| r.heads.clone()));
    out
}

fn slot_array(h: &Heads) -> [&str; 7] {
    let mut w = [""; 7];
    for (o, x) in w.iter_mut().zip(h.words()) {
        *o = x;
    }
    w
}

fn pooled_total(db: &FrequencyDatabase, table: Table, masks: &[PatternMask], words: &[&str; 7]) -> u64 {
    masks
        .iter()
        .map(|&m| {
            let ws: Vec<&str> = m.slots().map(|s| words[s as usize]).collect();
            db.total(table, m, &ws).unwrap()
        })
        .sum()
}

fn word() -> impl Strategy<Value = String> {
    "[A-Za-z0-9.$'-]{1,8}"
}

fn config() -> impl Strategy<Value = Configuration> {
    (1usize..=3).prop_flat_map(|n| {
        let kind = Kind::from_pp_count(n).unwrap();
        (1..=kind.num_configs()).prop_map(move |c| Configuration::new(kind, c).unwrap())
    })
}

fn arbitrary_record() -> impl Strategy<Value = TupleRecord> {
    (config(), prop::collection::vec(word(), 7), prop::option::of(word()), "[a-z0-9.]{1,10}").prop_map(
        |(config, w, final_noun, id)| {
            let full = Heads::pp3([&w[0], &w[1], &w[2], &w[3], &w[4], &w[5], &w[6]]);
            TupleRecord { id, config, heads: full.project(config.kind()), final_noun }
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tuple_file_roundtrip(records in prop::collection::vec(arbitrary_record(), 0..40)) {
        let text = write_tuple_file(&records);
        let back = read_tuple_file(text.as_bytes()).unwrap();
        prop_assert_eq!(&back, &records);
        prop_assert_eq!(write_tuple_file(&back), text);
    }

    #[test]
    fn model_roundtrip(seed in any::<u64>()) {
        let (_, records) = corpus(seed, 120);
        let db = build(&records);
        let text = save_model(&db);
        let back = load_model(text.as_bytes()).unwrap();
        prop_assert_eq!(&back, &db);
        prop_assert_eq!(save_model(&back), text);
    }

    #[test]
    fn projections_match_full_tuples(seed in any::<u64>()) {
        let (_, records) = corpus(seed, 120);
        prop_assert!(build(&records).projections_consistent());
    }

    #[test]
    fn counts_never_decrease(seed in any::<u64>()) {
        let (_, records) = corpus(seed, 80);
        prop_assume!(!records.is_empty());
        let small = build(&records[..records.len() - 1]);
        let big = build(&records);
        for (table, mask, words, counts) in small.entries() {
            let after = big.evidence(table, mask, &words).unwrap();
            for (i, &n) in counts.iter().enumerate() {
                prop_assert!(after.count(i) >= n);
            }
        }
    }

    #[test]
    fn scaling_counts_keeps_decisions(seed in any::<u64>(), factor in 2usize..5) {
        let (vocab, records) = corpus(seed, 100);
        let scaled: Vec<TupleRecord> = (0..factor)
            .flat_map(|k| records.iter().map(move |r| TupleRecord { id: format!("{}x{k}", r.id), ..r.clone() }))
            .collect();
        let (a, b) = (build(&records), build(&scaled));
        for h in probes(&vocab, seed, &records) {
            let (x, y) = (estimate(&a, &h), estimate(&b, &h));
            prop_assert_eq!(x.config, y.config);
            prop_assert_eq!(x.level, y.level);
            prop_assert_eq!(x.distribution, y.distribution);
        }
    }

    #[test]
    fn levels_are_the_first_non_empty(seed in any::<u64>()) {
        let (vocab, records) = corpus(seed, 150);
        let db = build(&records);
        for h in probes(&vocab, seed, &records) {
            let kind = h.kind().unwrap();
            let table = Table::for_kind(kind);
            let words = slot_array(&h);
            let totals: Vec<u64> = table.levels().iter().map(|m| pooled_total(&db, table, m, &words)).collect();
            let d = estimate(&db, &h);
            let depth = match d.level {
                BackoffLevel::Full => Some(0),
                BackoffLevel::Backoff(n) => Some(n as usize),
                BackoffLevel::Competitive | BackoffLevel::Default => None,
            };
            prop_assert_eq!(d.level == BackoffLevel::Full, totals[0] > 0);
            match depth {
                Some(l) => {
                    prop_assert!(totals[..l].iter().all(|&t| t == 0));
                    prop_assert_eq!(totals[l], d.denominator());
                }
                None => prop_assert!(totals.iter().all(|&t| t == 0)),
            }
        }
    }

    #[test]
    fn distributions_are_valid(seed in any::<u64>()) {
        let (vocab, records) = corpus(seed, 150);
        let db = build(&records);
        for h in probes(&vocab, seed, &records) {
            let d: AttachmentDecision = estimate(&db, &h);
            prop_assert_eq!(d.distribution.len(), d.kind().num_configs() as usize);
            prop_assert!(d.distribution.iter().all(|&p| (0.0..=1.0).contains(&p)));
            let sum: f64 = d.distribution.iter().sum();
            prop_assert!((sum - 1.0).abs() < 1e-9);
            let max = d.distribution.iter().cloned().fold(0.0, f64::max);
            prop_assert_eq!(d.probability(), max);
        }
    }

    #[test]
    fn bracketing_classifies_back(cfg in config(), w in prop::collection::vec("[a-z]{1,6}", 8)) {
        let heads = Heads::pp3([&w[0], &w[1], &w[2], &w[3], &w[4], &w[5], &w[6]]).project(cfg.kind());
        let tree = bracketing_for(cfg, &heads, &w[7]);
        let reparsed = parse_bracketed_tree(&tree.to_string()).unwrap();
        prop_assert_eq!(&reparsed, &tree);
        let m = classify_vp(&tree).unwrap();
        prop_assert_eq!(m.config, cfg);
        prop_assert_eq!(m.heads, heads);
        prop_assert_eq!(m.final_noun, w[7].clone());
    }

    #[test]
    fn splits_nest(seed in any::<u64>(), fraction in 0.05f64..0.5) {
        let records = synth::biased_corpus(300, 0.8, seed);
        let spec = SplitSpec { fractions: [fraction / 2.0, fraction, fraction], seed };
        let split = stratified_split(&records, &spec).unwrap();
        let ids = |rs: &[TupleRecord]| rs.iter().map(|r| r.id.clone()).collect::<std::collections::HashSet<_>>();
        let (train, t1, t2, t3) = (ids(&split.train), ids(&split.test1), ids(&split.test2), ids(&split.test3));
        prop_assert!(t3.is_subset(&t2) && t2.is_subset(&t1));
        prop_assert!(train.is_disjoint(&t1));
        prop_assert_eq!(train.len() + t1.len(), records.len());
        prop_assert_eq!(split, stratified_split(&records, &spec).unwrap());
    }

    #[test]
    fn report_rows_add_up(seed in any::<u64>()) {
        let (_, records) = corpus(seed, 150);
        let half = records.len() / 2;
        let db = build(&records[..half]);
        let tests = &records[half..];
        let report = evaluate(&db, tests);
        for kind in Kind::ALL {
            let expected = tests.iter().filter(|r| r.kind() == kind).count() as u64;
            let k = report.kind(kind);
            prop_assert_eq!(k.total().total, expected);
            prop_assert!(k.rows.values().all(|t| t.correct <= t.total));
            prop_assert_eq!(k.accuracy(), k.total().accuracy());
        }
    }
}
