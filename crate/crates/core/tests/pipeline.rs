use qcanon_core::bases::{canonical_basis, monomial_a_basis, monomial_basis, transition_matrix, verify_twisted_relations};
use qcanon_core::crystal::{string_order_compare, Crystal, StringOrdering, VertexOrder};
use qcanon_core::quiver::{framing_from_weight, FramedQuiver, Quiver};
use qcanon_core::repmodule::{verify_relations, HighestWeightModule, WeightModule};

fn pipeline(q: &Quiver, lambda: &[i64], h: i64, order: VertexOrder) {
    let m = HighestWeightModule::new(&q.cartan(), lambda, h).unwrap();
    assert!(verify_relations(&m, h).unwrap().all_passed());
    let c = Crystal::enumerate(&m, order.clone()).unwrap();
    c.check_axioms().unwrap();
    c.check_module_operators(&m).unwrap();
    for nu in m.weights() {
        assert_eq!(c.nodes_at(&nu).len(), m.dim(&nu));
        if m.dim(&nu) == 0 {
            continue;
        }
        let mb = monomial_basis(&m, &c, &nu).unwrap();
        // monomial nodes come sorted increasingly
        for w in mb.nodes.windows(2) {
            let o = string_order_compare(c.string(w[0]), c.string(w[1]), &order);
            assert!(matches!(o, StringOrdering::Less | StringOrdering::Incomparable));
        }
        let cb = canonical_basis(&c, &mb).unwrap();
        for g in &cb.vectors {
            assert_eq!(g.bar_coords(), *g);
        }
        let t = transition_matrix(&cb.vectors, &mb.vectors).unwrap();
        assert!(t.is_unitriangular() && t.is_laurent(), "{lambda:?} at {nu}");
    }
    let framed = FramedQuiver::new(q.clone(), framing_from_weight(q, lambda).unwrap(), None).unwrap();
    let basis = monomial_a_basis(&m, &c).unwrap();
    let r = verify_twisted_relations(&m, &framed, &basis, true).unwrap();
    assert!(r.all_passed(), "{:?}", r.failures().next());
}

#[test]
fn a3_end_to_end() {
    pipeline(&Quiver::linear(3), &[1, 0, 1], 4, VertexOrder::natural(3));
    pipeline(&Quiver::linear(3), &[0, 1, 0], 4, VertexOrder::new(vec![2, 0, 1]).unwrap());
}

#[test]
fn non_linear_orientation() {
    // 1 <- 2 -> 3: same Cartan matrix as A3, different orientation
    let q = Quiver::from_named(&["1", "2", "3"], &[("2", "1"), ("2", "3")]).unwrap();
    assert_eq!(q.cartan(), Quiver::linear(3).cartan());
    pipeline(&q, &[1, 1, 0], 4, VertexOrder::natural(3));
}

#[test]
fn kronecker_end_to_end() {
    pipeline(&Quiver::multi_edge(2), &[1, 0], 5, VertexOrder::natural(2));
    pipeline(&Quiver::multi_edge(2), &[1, 1], 4, VertexOrder::new(vec![1, 0]).unwrap());
}
