use paygap_wasm::{decomposition, pay_gap, sweep};

#[test]
fn sweep_rows_match_endpoints() {
    let csv = sweep("1/2:1:1/4", "rational").unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("1/2,2,1/4,7/4,"));
    assert!(lines[3].starts_with("1,2,2,0,"));
    assert!(sweep("1/4:1:1/4", "rational").is_err());
    assert!(sweep("1/2:1:1/4", "decimal").is_err());
}

#[test]
fn reversal_through_the_decomposition_binding() {
    let out = decomposition("1/2", "3/4", "1/2", "1", "0 1", "rational").unwrap();
    assert!(out.contains("total                  -1/4"), "{out}");
    assert!(out.contains("perception-correcting  -1/4"));
    assert!(out.contains("instrumental           0"));
    let float = decomposition("0.5", "0.75", "0.5", "1", "0 1", "float").unwrap();
    assert!(float.contains("total                  -0.25"), "{float}");
}

#[test]
fn pay_gap_at_a_switch_point() {
    let out = pay_gap("1/2", "3/4", "1/4", "4/5", "0 1; -4 4", "rational").unwrap();
    assert!(out.contains("gap = 144/91"), "{out}");
    assert!(out.contains("W_I = 347/182"));
}

#[test]
fn malformed_inputs_are_reported() {
    assert!(pay_gap("1/2", "3/4", "1/4", "4/5", "0 1 2", "rational")
        .unwrap_err()
        .contains("two surpluses"));
    assert!(pay_gap("1", "3/4", "1/4", "4/5", "0 1", "rational").is_err());
    assert!(decomposition("1/2", "x", "1/2", "1", "0 1", "rational")
        .unwrap_err()
        .starts_with("q:"));
    assert!(decomposition("1/2", "1/3", "0.3", "1", "0 1", "rational").is_err());
}
