use spschur_cli::{catalog, golden_path, Params};

#[test]
fn default_reports_match_goldens() {
    for s in catalog() {
        let report = s.run(&Params::default()).unwrap();
        let golden = std::fs::read_to_string(golden_path(&s.id))
            .unwrap_or_else(|e| panic!("{}: missing golden ({e})", s.id));
        assert_eq!(report.to_json(), golden, "{} differs from its golden", s.id);
    }
}
