use permadiag_cli::{Document, Format};
use proptest::prelude::*;

fn document() -> impl Strategy<Value = Document> {
    (1usize..4).prop_flat_map(|w| {
        let cell = "[ -~]{0,8}";
        (
            proptest::collection::vec(proptest::collection::vec(cell, w), 0..6),
            proptest::collection::btree_map("[a-z]{1,4}", "[a-z0-9|]{0,5}", 0..3),
        )
            .prop_map(move |(rows, params)| {
                let cols: Vec<String> = (0..w).map(|k| format!("c{k}")).collect();
                let refs: Vec<&str> = cols.iter().map(String::as_str).collect();
                let mut d = Document::new("prop.rows", &refs);
                d.params = params;
                for r in rows {
                    d.push(r);
                }
                d
            })
    })
}

proptest! {
    #[test]
    fn json_round_trips(d in document()) {
        let s = d.render(Format::Json).unwrap();
        prop_assert_eq!(Document::from_json(&s).unwrap(), d);
    }

    #[test]
    fn csv_keeps_cells(d in document()) {
        let back = Document::from_csv("prop.rows", &d.render(Format::Csv).unwrap()).unwrap();
        prop_assert_eq!(back.columns, d.columns);
        prop_assert_eq!(back.rows, d.rows);
    }

    #[test]
    fn text_counts_rows(d in document()) {
        let t = d.render(Format::Text).unwrap();
        prop_assert_eq!(t.lines().count(), d.len() + 3);
    }
}
