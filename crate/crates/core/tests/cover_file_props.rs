use abcover::cover::{BranchComponent, CoverData};
use abcover::cover_file::{parse_cover, write_cover};
use abcover::fixtures::fixtures;
use abcover::FiniteAbelianGroup;
use proptest::prelude::*;

#[test]
fn fixtures_round_trip() {
    for f in fixtures() {
        let cover = f.cover();
        assert_eq!(
            parse_cover(&write_cover(&cover)).unwrap(),
            cover,
            "{}",
            f.name
        );
    }
}

proptest! {
    #[test]
    fn written_covers_parse_back(
        factors in prop::sample::select(vec![vec![2u32], vec![2, 2], vec![2, 4], vec![6], vec![3, 3]]),
        picks in prop::collection::vec((1usize..9, 1i64..12, any::<bool>()), 1..6),
    ) {
        let g = FiniteAbelianGroup::new(&factors).unwrap();
        let comps: Vec<BranchComponent> = picks
            .iter()
            .enumerate()
            .map(|(i, &(idx, d, named))| {
                let label = g.element_at(1 + idx % (g.order() - 1));
                if named {
                    BranchComponent::named(label, d, format!("b{i}"))
                } else {
                    BranchComponent::new(label, d)
                }
            })
            .collect();
        let cover = CoverData::new(g, comps);
        let text = write_cover(&cover);
        match cover.validate() {
            Ok(()) => prop_assert_eq!(parse_cover(&text).unwrap(), cover),
            Err(_) => prop_assert!(parse_cover(&text).is_err()),
        }
    }
}
