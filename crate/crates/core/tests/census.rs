use ybe::search::{self, census_cells, census_with_workers, frozen_census, oracle, EnumFilter};
use ybe::Tables;

fn sorted(mut v: Vec<Tables>) -> Vec<Tables> {
    v.sort();
    v
}

#[test]
fn frozen_file_covers_every_cell() {
    let frozen = frozen_census();
    let cells = census_cells();
    assert_eq!(frozen.len(), cells.len());
    for (n, filter) in cells {
        assert!(search::frozen_record(n, &filter).is_some(), "missing n={n} filter={filter}");
    }
}

#[test]
fn frozen_census_reproduces_with_any_worker_count() {
    for workers in [1, 3] {
        for (n, filter) in census_cells() {
            let got = census_with_workers(n, &filter, workers).unwrap();
            let want = search::frozen_record(n, &filter).unwrap();
            assert_eq!(got, want, "workers={workers}");
        }
    }
}

#[test]
fn frozen_text_round_trips() {
    let text = search::format_census(&frozen_census());
    assert_eq!(text, search::FROZEN_CENSUS);
}

#[test]
fn pruned_equals_oracle_unrestricted_n2() {
    let pruned: Vec<Tables> = search::enumerate(2, &EnumFilter::all())
        .unwrap()
        .into_iter()
        .map(|s| s.into_tables())
        .collect();
    assert_eq!(pruned, sorted(oracle::full_scan(2, false, false, 1)));
}

#[test]
fn pruned_equals_oracle_left_nd_n3() {
    let pruned: Vec<Tables> = search::enumerate(3, &EnumFilter::left_nd())
        .unwrap()
        .into_iter()
        .map(|s| s.into_tables())
        .collect();
    let oracle = sorted(oracle::full_scan(3, true, false, 2));
    assert_eq!(pruned.len(), oracle.len());
    assert_eq!(pruned, oracle);
}

#[test]
fn iso_filter_keeps_one_canonical_representative_per_class() {
    let filter = EnumFilter { up_to_iso: true, ..EnumFilter::nd() };
    let reps = search::enumerate(3, &filter).unwrap();
    let all = search::enumerate(3, &EnumFilter::nd()).unwrap();
    assert_eq!(reps.len(), search::count_classes(all.iter().map(|s| s.tables())).unwrap());
    for r in &reps {
        assert_eq!(&ybe::solution::canonical_form(r).unwrap(), r);
    }
}
