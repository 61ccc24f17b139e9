use vcrit_core::canon::are_isomorphic;
use vcrit_core::corpus::{self, ALL};
use vcrit_core::criticality::{audit, audit_critical_list, decide_by_critical_list, is_k_edge_critical};
use vcrit_core::structure::{c5_claim_violations, c5_partition, induced_c5s, recognize_h_class};
use vcrit_core::{Graph, Pattern};

#[test]
fn every_listed_graph_passes_the_audit() {
    for list in ALL {
        let patterns = Pattern::parse_list(list.patterns).unwrap();
        for (i, g) in list.graphs().iter().enumerate() {
            let a = audit(g, list.k, &patterns, 2).unwrap();
            assert!(a.passes(), "{} #{i}: {:?}", list.name, a.first_failure());
        }
        assert!(audit_critical_list(list.k, &patterns, &list.graphs()).unwrap().is_empty());
    }
}

#[test]
fn c5_structure_holds_for_every_cycle() {
    for list in [corpus::K4_P5_COP3P2, corpus::K5_P5_COP3P2] {
        for (i, g) in list.graphs().iter().enumerate() {
            if g.is_clique(g.vertices()) {
                continue;
            }
            let cycles = induced_c5s(g);
            assert!(!cycles.is_empty(), "{} #{i} has no induced C5", list.name);
            for q in cycles {
                let p = c5_partition(g, q).unwrap();
                assert_eq!(c5_claim_violations(g, &p), Vec::<String>::new(), "{} #{i} Q = {q:?}", list.name);
            }
        }
    }
}

#[test]
fn claim_checker_flags_a_violation() {
    // C5 plus a pendant vertex: the pendant is unclassified and the checker
    // reports it
    let g = Graph::cycle(5).unwrap().add_vertex([0].into_iter().collect()).unwrap();
    let p = c5_partition(&g, [0, 1, 2, 3, 4]).unwrap();
    assert!(!c5_claim_violations(&g, &p).is_empty());
}

#[test]
fn h_class_fixtures() {
    // none of the listed graphs admits the seven-part partition
    for list in ALL {
        for g in list.graphs() {
            assert!(recognize_h_class(&g).is_none());
        }
    }
}

#[test]
fn lists_share_the_expected_graphs() {
    let gem4 = corpus::K4_P5_GEM.graphs();
    let co4 = corpus::K4_P5_COP3P2.graphs();
    // K4 and the 7-vertex graph appear in both 4-critical lists
    assert!(are_isomorphic(&gem4[0], &co4[0]));
    assert!(are_isomorphic(&gem4[1], &co4[2]));
    // the 10-vertex gem-free graph contains co(P3+P2)
    assert!(vcrit_core::patterns::contains_induced(&gem4[2], &Pattern::co_p3_plus_p2()).is_some());
}

#[test]
fn decisions_from_the_4_critical_gem_list() {
    let crit = corpus::K4_P5_GEM.graphs();
    assert!(decide_by_critical_list(&Graph::cycle(5).unwrap(), &crit));
    assert!(!decide_by_critical_list(&Graph::complete(4).unwrap(), &crit));
    assert!(!decide_by_critical_list(&crit[2], &crit));
}

#[test]
fn wheel_is_edge_critical() {
    let co4 = corpus::K4_P5_COP3P2.graphs();
    assert!(is_k_edge_critical(&co4[1], 4).unwrap());
}
