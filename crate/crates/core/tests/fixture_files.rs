use sl3web::fixtures::{self, build_cube, flower, paired_arcs};
use sl3web::web::text::{parse_web, parse_webs, write_web, ParseError};

#[test]
fn files_match_builders() {
    assert!(fixtures::cube().is_isomorphic(&build_cube()));
    assert!(fixtures::kk_w().is_isomorphic(&flower(&[6; 6])));
    assert!(fixtures::semi_superficial().is_isomorphic(&flower(&[4, 6, 6, 6, 6, 6])));
    let eps = fixtures::kk_w().boundary().clone();
    assert_eq!(eps.to_string(), "+--++--++--+");
    assert!(fixtures::kk_w0().is_isomorphic(&paired_arcs(&eps)));
}

#[test]
fn fixture_shapes() {
    let w = fixtures::kk_w();
    assert_eq!((w.vertex_count(), w.edge_count()), (24, 42));
    assert_eq!(fixtures::kk_w0().vertex_count(), 0);
    assert_eq!(fixtures::cube().vertex_count(), 8);
}

#[test]
fn every_fixture_round_trips() {
    for (name, w) in fixtures::all_webs() {
        let text = write_web(&name, &w);
        let (back_name, back) = parse_web(&text).unwrap();
        assert_eq!(back_name, name);
        assert_eq!(back.canonical_code(), w.canonical_code(), "{name}");
        assert_eq!(back.mirror().canonical_code(), w.mirror().canonical_code(), "{name}");
    }
}

#[test]
fn several_blocks_per_file() {
    let src = fixtures::all_webs()
        .iter()
        .map(|(n, w)| write_web(n, w))
        .collect::<Vec<_>>()
        .join("\n");
    assert_eq!(parse_webs(&src).unwrap().len(), fixtures::all_webs().len());
}

#[test]
fn malformed_rotation_is_located() {
    let src = "web y\nboundary + + +\nvertex v source\nedge a v b0\nedge b v b1\nedge c v b2\nrot v a b\n";
    match parse_web(src) {
        Err(ParseError::Syntax { line, .. }) | Err(ParseError::Invalid { line, .. }) => assert!(line >= 1),
        other => panic!("expected an error, got {other:?}"),
    }
    let src = "web y\nboundary + + +\nvertex v source\nedge a v b0\nedge b v b1\nedge c v b2\nrot v a b z\n";
    assert!(matches!(parse_web(src), Err(ParseError::Syntax { line: 7, .. })));
}
