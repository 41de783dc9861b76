mod common;

use common::small_graph;
use proptest::prelude::*;
use reeb::phylo::network_shape;
use reeb::{hausdorff, lp_distance, network_distance, CopheneticVector, Distance, Norm};

fn norm() -> impl Strategy<Value = Norm> {
    prop_oneof![Just(Norm::Infinity), (1u32..4).prop_map(Norm::Finite)]
}

fn point_set(dim: usize) -> impl Strategy<Value = Vec<CopheneticVector<i64>>> {
    prop::collection::vec(prop::collection::vec(-20i64..20, dim), 1..5).prop_map(move |pts| {
        pts.into_iter()
            .map(|entries| CopheneticVector { leaves: 2, entries })
            .collect()
    })
}

/// `x <= y + z` on certified enclosures.
fn below_sum(x: &Distance, y: &Distance, z: &Distance) -> bool {
    x.lower() <= &(y.upper() + z.upper())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn hausdorff_is_a_metric_on_point_sets(a in point_set(3), b in point_set(3), c in point_set(3), p in norm()) {
        let ab = hausdorff(&a, &b, p).unwrap();
        let ba = hausdorff(&b, &a, p).unwrap();
        prop_assert_eq!(&ab, &ba);
        prop_assert!(hausdorff(&a, &a, p).unwrap().is_zero());
        let bc = hausdorff(&b, &c, p).unwrap();
        let ac = hausdorff(&a, &c, p).unwrap();
        prop_assert!(below_sum(&ac, &ab, &bc));
        prop_assert!(ab.lower() <= ab.upper());
    }

    #[test]
    fn lp_norms_are_ordered(u in prop::collection::vec(-20i64..20, 3), v in prop::collection::vec(-20i64..20, 3)) {
        let (u, v) = (CopheneticVector { leaves: 2, entries: u }, CopheneticVector { leaves: 2, entries: v });
        let one = lp_distance(&u, &v, Norm::Finite(1)).unwrap();
        let two = lp_distance(&u, &v, Norm::Finite(2)).unwrap();
        let inf = lp_distance(&u, &v, Norm::Infinity).unwrap();
        prop_assert!(inf.lower() <= two.upper());
        prop_assert!(two.lower() <= one.upper());
    }

    #[test]
    fn network_distance_is_a_pseudometric(s1 in any::<u64>(), s2 in any::<u64>(), p in norm()) {
        let (Some(a), Some(b)) = (small_graph(s1, 16), small_graph(s2, 16)) else { return Ok(()) };
        prop_assert!(network_distance(&a, &a, p).unwrap().is_zero());
        if network_shape(&a) == network_shape(&b) {
            let ab = network_distance(&a, &b, p).unwrap();
            prop_assert_eq!(ab, network_distance(&b, &a, p).unwrap());
        } else {
            prop_assert!(network_distance(&a, &b, p).is_err());
        }
    }

    #[test]
    fn order_preserving_renaming_keeps_distances(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (Some(a), Some(b)) = (small_graph(s1, 16), small_graph(s2, 16)) else { return Ok(()) };
        if network_shape(&a) != network_shape(&b) {
            return Ok(());
        }
        let renamed = a.rename(|v| format!("t.{v}"), |e| format!("t.{e}"));
        prop_assert!(network_distance(&a, &renamed, Norm::Finite(1)).unwrap().is_zero());
        prop_assert_eq!(
            network_distance(&a, &b, Norm::Infinity).unwrap(),
            network_distance(&renamed, &b, Norm::Infinity).unwrap()
        );
    }
}
