use achromatic::adg::{
    build_polarity_graph, gh_family, gq_family, l, p, plane_family, AdgSpec, BiVertex, CheckMode, Expr, PolaritySpec,
    SpecFile,
};
use achromatic::gf::{find_normal_element, Fe};
use achromatic::graphs::ImplicitGraph;
use achromatic::partitions::{gh_partition, gq_partition, plane_partition};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;

fn systems() -> &'static [(AdgSpec, PolaritySpec)] {
    static CELL: OnceLock<Vec<(AdgSpec, PolaritySpec)>> = OnceLock::new();
    CELL.get_or_init(|| {
        vec![
            plane_family(3).unwrap(),
            plane_family(4).unwrap(),
            gq_family(1, false).unwrap(),
            gh_family(0, true).unwrap(),
            gh_family(1, false).unwrap(),
        ]
    })
}

fn coords(spec: &AdgSpec, raw: &[u32]) -> Vec<Fe> {
    raw.iter().take(spec.m()).map(|&x| Fe(x % spec.q())).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn forward_substitution_gives_the_unique_incident_vertex(
        i in 0usize..5, raw in proptest::collection::vec(any::<u32>(), 5), t in any::<u32>()
    ) {
        let (spec, _) = &systems()[i];
        let m = spec.m();
        let point = coords(spec, &raw);
        let mut line = vec![Fe::ZERO; m];
        spec.line_through(&point, Fe(t % spec.q()), &mut line);
        prop_assert!(spec.is_incident(&point, &line));
        let mut back = vec![Fe::ZERO; m];
        spec.point_on(&line, point[0], &mut back);
        prop_assert_eq!(&back, &point);
        let codec = spec.codec().unwrap();
        prop_assert_eq!(codec.decode_vec(codec.encode(&point)), point);
    }

    #[test]
    fn polarities_are_incidence_preserving_involutions(
        i in 0usize..5, raw in proptest::collection::vec(any::<u32>(), 5), t in any::<u32>()
    ) {
        let (spec, pol) = &systems()[i];
        let f = spec.field();
        let point = BiVertex::point(coords(spec, &raw));
        let image = pol.apply(f, &point);
        prop_assert_eq!(pol.apply(f, &image), point.clone());
        let mut line = vec![Fe::ZERO; spec.m()];
        spec.line_through(&point.coords, Fe(t % spec.q()), &mut line);
        let line_image = pol.apply(f, &BiVertex::line(line));
        prop_assert!(spec.is_incident(&line_image.coords, &image.coords));
    }

    #[test]
    fn expressions_survive_serialization(a in 1usize..3, b in 1usize..3, e in 1u64..5) {
        let expr: Expr = p(a) * l(b).pow(e) - l(1) + p(1);
        let json = serde_json::to_string(&expr).unwrap();
        prop_assert_eq!(serde_json::from_str::<Expr>(&json).unwrap(), expr);
    }
}

#[test]
fn spec_files_round_trip() {
    let (spec, _) = gq_family(1, false).unwrap();
    let file = spec.to_file();
    let text = serde_json::to_string(&file).unwrap();
    let back = AdgSpec::from_file(&serde_json::from_str::<SpecFile>(&text).unwrap()).unwrap();
    assert_eq!(back.to_file(), file);
}

#[test]
fn partitions_have_equal_classes() {
    let (s, _) = plane_family(3).unwrap();
    let part = plane_partition(&s, &find_normal_element(s.field()).unwrap()).unwrap();
    assert!(part.partition.class_sizes().iter().all(|&n| n == 3));
    let (s, _) = gq_family(1, false).unwrap();
    assert!(gq_partition(&s).unwrap().partition.class_sizes().iter().all(|&n| n == 8));
    let (s, _) = gh_family(0, true).unwrap();
    let part = gh_partition(&s).unwrap();
    assert_eq!(part.partition.class_count(), 27);
    assert!(part.partition.class_sizes().iter().all(|&n| n == 9));
}

#[test]
fn hexagon_27_neighborhoods_are_symmetric_on_samples() {
    let (spec, pol) = gh_family(1, false).unwrap();
    let pg = build_polarity_graph(&spec, &pol, CheckMode::Sampled { samples: 10_000, seed: 3 }).unwrap();
    let n = pg.vertex_count() as u32;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10_000 {
        let v = rng.gen_range(0..n);
        let nb = pg.neighbors_vec(v);
        assert_eq!(nb.len(), pg.degree(v));
        let u = nb[rng.gen_range(0..nb.len())];
        assert!(pg.neighbors_vec(u).contains(&v), "{u} in N({v}) but not back");
        assert!(pg.adjacent(u, v) && pg.adjacent(v, u));
    }
}
