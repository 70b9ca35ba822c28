use proptest::prelude::*;

use srknot::corpus::{load_corpus, save_corpus, table1, verify_corpus, write_corpus, TABLE1};
use srknot::seifert::{alexander_from_seifert, SeifertMatrix};
use srknot::srpoly::{F_factor, SRDecomposition, SRParams};
use srknot::srsearch::{classify, decompose, CandidateTable, SRClassification};
use srknot::Error;

fn params() -> impl Strategy<Value = SRParams> {
    (1u32..=3, -3i64..=3)
        .prop_flat_map(|(m, l)| (Just(m), Just(l), 0..=m))
        .prop_map(|(m, l, p)| SRParams::new(m, l, p).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn products_are_compatible(xs in prop::collection::vec(params(), 1..=2)) {
        let target = SRDecomposition::new(xs).polynomial();
        match classify(&target) {
            SRClassification::PolyCompatible(ds) => {
                for d in ds {
                    prop_assert_eq!(d.polynomial(), target.clone());
                }
            }
            other => prop_assert!(false, "{:?}", other),
        }
    }
}

#[test]
fn table_lists_every_alias() {
    let t = CandidateTable::new(12);
    let mut total = 0;
    for c in t.candidates() {
        total += c.aliases.len();
        for w in c.aliases.windows(2) {
            assert!(w[0] < w[1]);
        }
    }
    let direct = SRParams::grid(7, 14)
        .filter(|&x| {
            let d = F_factor(x).degree();
            (2..=12).contains(&d)
        })
        .count();
    assert_eq!(total, direct);
}

#[test]
fn decompose_reports_aliases() {
    let target = F_factor(SRParams::new(2, 1, 2).unwrap());
    let got = decompose(&target);
    let mirror = SRDecomposition::new(vec![SRParams::new(2, -1, 0).unwrap()]);
    assert!(got.contains(&mirror), "{got:?}");
}

#[test]
fn corpus_file_round_trip() {
    let dir = std::env::temp_dir().join(format!("srknot-corpus-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table1.txt");
    write_corpus(&path, &table1()).unwrap();
    assert_eq!(std::fs::read_to_string(&path).unwrap(), TABLE1);
    let back = load_corpus(&path).unwrap();
    assert_eq!(back, table1());
    assert_eq!(save_corpus(&back), TABLE1);
    std::fs::remove_dir_all(&dir).unwrap();
    assert!(matches!(
        load_corpus(dir.join("missing")),
        Err(Error::Io(_))
    ));
}

#[test]
fn shipped_table_invariants() {
    let rows = verify_corpus(&table1());
    for r in &rows {
        assert_ne!(r.delta2, srknot::corpus::CheckOutcome::Fail, "{r}");
        assert_ne!(r.det, srknot::corpus::CheckOutcome::Fail, "{r}");
        assert_ne!(r.classify, srknot::corpus::CheckOutcome::Fail, "{r}");
    }
}

#[test]
fn seifert_matrix_of_trefoil() {
    let m = SeifertMatrix::new(vec![vec![-1, 1], vec![0, -1]]).unwrap();
    assert_eq!(
        alexander_from_seifert(&m).unwrap().to_string(),
        "1 - t + t^2"
    );
    let empty = SeifertMatrix::new(Vec::new()).unwrap();
    assert!(alexander_from_seifert(&empty).unwrap().poly().is_one());
    assert!(SeifertMatrix::new(vec![vec![1, 2]]).is_err());
}
