use foxwright::exec::Execution;
use foxwright::report::{parse_job, read_scan_csv, run_scan, write_scan_csv, Action, ScanRow};
use proptest::prelude::*;

fn finite() -> impl Strategy<Value = f64> {
    prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn csv_round_trip_is_bit_exact(
        rows in prop::collection::vec((finite(), finite(), any::<bool>()), 1..30),
        header in "[A-Za-z0-9_ ,\"]{1,12}",
    ) {
        let rows: Vec<ScanRow> = rows
            .into_iter()
            .map(|(value, margin, pass)| ScanRow { value, margin, pass })
            .collect();
        let text = write_scan_csv(&rows, &header).unwrap();
        let (h, back) = read_scan_csv(&text).unwrap();
        prop_assert_eq!(h, header);
        let mut want = rows.clone();
        want.sort_by(|a, b| a.value.total_cmp(&b.value));
        prop_assert_eq!(back.len(), want.len());
        for (a, b) in back.iter().zip(&want) {
            prop_assert_eq!(a.value.to_bits(), b.value.to_bits());
            prop_assert_eq!(a.margin.to_bits(), b.margin.to_bits());
            prop_assert_eq!(a.pass, b.pass);
        }
    }
}

#[test]
fn scan_output_survives_rereading() {
    let job = parse_job(
        br#"
upper = [[2.0, 1.0]]
lower = [[3.0, 1.0]]

[[actions]]
kind = "scan"
variable = "b1"
from = 3.0
to = 8.0
steps = 11
test = "inequality"
criterion = "TT9_INEQ"
"#,
    )
    .unwrap();
    let Action::Scan(spec) = &job.actions[0] else {
        panic!("expected a scan action");
    };
    let rows = run_scan(&job, spec, Execution::Parallel).unwrap();
    assert_eq!(rows, run_scan(&job, spec, Execution::Sequential).unwrap());
    let text = write_scan_csv(&rows, "b1").unwrap();
    let (_, back) = read_scan_csv(&text).unwrap();
    assert_eq!(back, rows);
    assert_eq!(write_scan_csv(&back, "b1").unwrap(), text);
}

#[test]
fn malformed_csv_is_a_parse_error() {
    for text in [
        "",
        "x,margin\n",
        "x,margin,pass\n1,2\n",
        "x,margin,pass\n1,2,maybe\n",
    ] {
        assert!(read_scan_csv(text).is_err(), "{text:?}");
    }
}
