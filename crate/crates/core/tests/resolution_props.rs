//! Resolution, Betti, Hilbert, dimension, syzygy and transpose fixtures,
//! plus the structural invariants every computed resolution must satisfy.

mod common;

use betti_core::engine::Length;
use betti_core::module::syzygies_over_r;
use betti_core::resolution::graded_map_matrix;
use betti_core::{Engine, ModElement, PresentedModule, TermOrder};
use common::oracles::{brute_force_membership, random_homog};
use common::*;

fn engine() -> Engine {
    Engine::default()
}

#[test]
fn koszul_resolution_of_k_over_poly_ring() {
    let eng = engine();
    let k = residue_field(&poly_xy());
    let res = eng.minimal_resolution(&k, 10).unwrap();
    let betti = eng.betti_table(&res).unwrap();
    assert_eq!(betti.totals()[..4], [1, 2, 1, 0]);
    assert_eq!(betti.get(0, 0), 1);
    assert_eq!(betti.get(1, 1), 2);
    assert_eq!(betti.get(2, 2), 1);
    assert!(res.finite());
}

#[test]
fn k_over_hypersurface_is_periodic() {
    let eng = engine();
    let k = residue_field(&hyper_xy());
    let res = eng.minimal_resolution(&k, 10).unwrap();
    let betti = eng.betti_table(&res).unwrap();
    let totals = betti.totals();
    assert_eq!(totals[0], 1);
    for i in 1..=10 {
        assert_eq!(totals[i], 2, "step {i}");
        assert_eq!(betti.get(i, i as i64), 2, "all differentials linear");
    }
}

#[test]
fn periodic_rank_one_resolution_over_big_hypersurface() {
    // R/(x) over F_p[x,y,z,w]/(xy): differentials alternate (x) and (y).
    let eng = engine();
    let r = hyper_xyzw();
    let m = cyclic(&r, &["x"]);
    let res = eng.minimal_resolution(&m, 8).unwrap();
    assert_eq!(res.betti_totals(), vec![1; 9]);
    for i in 1..=8 {
        let d = res.differential(i).unwrap();
        assert_eq!(d.len(), 1);
        let poly = d[0].component(0).unwrap();
        let want = if i % 2 == 1 { "x" } else { "y" };
        assert_eq!(poly, &r.base.parse(want).unwrap(), "step {i}");
    }
}

#[test]
fn free_module_resolves_instantly() {
    let eng = engine();
    let f = PresentedModule::free(poly_xy(), vec![3, 3]);
    let res = eng.minimal_resolution(&f, 5).unwrap();
    let betti = eng.betti_table(&res).unwrap();
    assert_eq!(betti.get(0, 3), 2);
    assert_eq!(betti.totals()[1..], [0, 0, 0, 0, 0]);
}

#[test]
fn hilbert_function_fixtures() {
    let eng = engine();
    let r_poly = PresentedModule::ring_module(poly_xy());
    let h = eng.hilbert_function(&r_poly, 6).unwrap();
    assert_eq!(h.window(5), vec![1, 2, 3, 4, 5, 6]);

    let r_hyp = PresentedModule::ring_module(hyper_xy());
    let h = eng.hilbert_function(&r_hyp, 6).unwrap();
    assert_eq!(h.window(5), vec![1, 2, 2, 2, 2, 2]);

    let k_shift = residue_field(&poly_xy()).shift_degrees(1);
    let h = eng.hilbert_function(&k_shift, 4).unwrap();
    assert_eq!(h.window(3), vec![0, 1, 0, 0]);
}

#[test]
fn krull_dimension_fixtures() {
    let eng = engine();
    assert_eq!(
        eng.krull_dimension(&PresentedModule::ring_module(poly_xy()))
            .unwrap(),
        2
    );
    assert_eq!(
        eng.krull_dimension(&PresentedModule::ring_module(hyper_xyzw()))
            .unwrap(),
        3
    );
    assert_eq!(eng.krull_dimension(&residue_field(&poly_xy())).unwrap(), 0);
    assert!(eng
        .krull_dimension(&PresentedModule::zero(poly_xy()))
        .is_err());
}

#[test]
fn length_fixtures() {
    let eng = engine();
    assert_eq!(
        eng.module_length(&residue_field(&poly_xy())).unwrap(),
        Length::Finite(1)
    );
    let m = cyclic(&poly_xy(), &["x", "y^2"]);
    assert_eq!(eng.module_length(&m).unwrap(), Length::Finite(2));
    let inf = cyclic(&poly_xy(), &["x"]);
    assert_eq!(eng.module_length(&inf).unwrap(), Length::Infinite);
}

#[test]
fn syzygy_module_fixtures() {
    let eng = engine();
    // Omega^0 is the identity.
    let k = residue_field(&poly_xy());
    assert_eq!(eng.syzygy_module(&k, 0).unwrap(), k);

    // Omega^1 k over F_p[x,y] is the maximal ideal: two degree-1 generators.
    let omega = eng.syzygy_module(&k, 1).unwrap();
    assert_eq!(omega.twists, vec![1, 1]);
    assert!(omega.minimal);

    // Omega^1(R/(x)) over F_p[x,y]/(xy) is R/(y) shifted by one.
    let r = hyper_xy();
    let m = cyclic(&r, &["x"]);
    let omega = eng.syzygy_module(&m, 1).unwrap();
    assert_eq!(omega.twists, vec![1]);
    assert_eq!(omega.ncols(), 1);
    assert_eq!(omega.entry(0, 0), r.base.parse("y").unwrap());

    // Syzygies of a free module vanish.
    let f = PresentedModule::free(poly_xy(), vec![0, 2]);
    assert!(eng.syzygy_module(&f, 1).unwrap().has_no_generators());
}

#[test]
fn transpose_fixtures() {
    let eng = engine();
    // Free modules have zero transpose.
    let f = PresentedModule::free(poly_xy(), vec![0, 1]);
    assert!(eng.transpose(&f).unwrap().has_no_generators());

    // Tr k over F_p[x,y]: dual of the 1x2 presentation, two generators.
    let k = residue_field(&poly_xy());
    let tr = eng.transpose(&k).unwrap();
    assert_eq!(tr.twists, vec![-1, -1]);
    assert_eq!(tr.ncols(), 1);

    // Tr(R/(x)) over F_p[x,y]/(xy): the presentation [x] is self-dual up to
    // twist.
    let r = hyper_xy();
    let m = cyclic(&r, &["x"]);
    let tr = eng.transpose(&m).unwrap();
    assert_eq!(tr.twists, vec![-1]);
    assert_eq!(tr.entry(0, 0), r.base.parse("x").unwrap());

    // Non-minimal input is minimalized before dualizing.
    let padded = PresentedModule::from_rows(
        r.clone(),
        &[
            vec![r.base.parse("x").unwrap(), r.base.zero()],
            vec![r.base.zero(), r.base.one()],
        ],
        Some(vec![0, 0]),
    )
    .unwrap();
    let tr2 = eng.transpose(&padded).unwrap();
    assert_eq!(tr2, tr);
}

fn fixture_corpus() -> Vec<(String, PresentedModule)> {
    let mut out = Vec::new();
    out.push(("k/poly".to_string(), residue_field(&poly_xy())));
    out.push(("k/hyp".to_string(), residue_field(&hyper_xy())));
    out.push(("R/(x) hyp".to_string(), cyclic(&hyper_xy(), &["x"])));
    out.push(("R/(x) hyp4".to_string(), cyclic(&hyper_xyzw(), &["x"])));
    out.push((
        "R/(y,z,w) hyp4".to_string(),
        cyclic(&hyper_xyzw(), &["y", "z", "w"]),
    ));
    out.push(("k/ci2".to_string(), residue_field(&ci_codim2())));
    out.push((
        "mixed hyp4".to_string(),
        cyclic(&hyper_xyzw(), &["x^2", "y*z"]),
    ));
    out
}

#[test]
fn structural_invariants_on_fixture_corpus() {
    let eng = engine();
    for (name, m) in fixture_corpus() {
        let res = eng.minimal_resolution(&m, 6).unwrap();
        eng.check_complex(&res).unwrap_or_else(|e| panic!("{name}: {e}"));
        eng.check_minimality(&res)
            .unwrap_or_else(|e| panic!("{name}: {e}"));
        eng.check_graded_exactness(&res, 8)
            .unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn betti_tables_are_order_independent() {
    for (vars, rels) in [
        (vec!["x", "y"], vec![]),
        (vec!["x", "y"], vec!["x*y"]),
        (vec!["x", "y", "z", "w"], vec!["x*y"]),
    ] {
        let rg = ring(&vars, &rels, TermOrder::GrevLex);
        let rl = ring(&vars, &rels, TermOrder::Lex);
        let eng = engine();
        for gens in [vec!["x"], vec!["x", "y"]] {
            let mg = cyclic(&rg, &gens);
            let ml = cyclic(&rl, &gens);
            let tg = eng
                .betti_table(&eng.minimal_resolution(&mg, 6).unwrap())
                .unwrap();
            let tl = eng
                .betti_table(&eng.minimal_resolution(&ml, 6).unwrap())
                .unwrap();
            assert_eq!(tg, tl, "vars {vars:?} rels {rels:?} gens {gens:?}");
        }
    }
}

#[test]
fn hilbert_additivity_along_syzygy_sequences() {
    // 0 -> Omega M -> F0 -> M -> 0 forces HS(F0) = HS(M) + HS(Omega M).
    let eng = engine();
    for (name, m) in fixture_corpus() {
        let omega = eng.syzygy_module(&m, 1).unwrap();
        let min = betti_core::module::minimalize_presentation(&m, 40).unwrap();
        let f0 = PresentedModule::free(m.ring.clone(), min.twists.clone());
        let hi = 9;
        let hm = eng.hilbert_function(&min, hi).unwrap();
        let ho = eng.hilbert_function(&omega, hi).unwrap();
        let hf = eng.hilbert_function(&f0, hi).unwrap();
        for d in 0..=hi {
            assert_eq!(
                hf.value(d),
                hm.value(d) + ho.value(d),
                "{name} at degree {d}"
            );
        }
    }
}

#[test]
fn syzygy_component_dimensions_match_brute_force_kernel() {
    // Graded pieces of the syzygy module agree with kernels computed by
    // plain linear algebra on the free covers, through degree 6.
    for r in [poly_xy(), hyper_xy(), hyper_xyzw()] {
        for gens in [vec!["x", "y"], vec!["x^2", "x*y"]] {
            let m = cyclic(&r, &gens);
            let cover = m.free_cover();
            let (syz_cover, syz) =
                syzygies_over_r(&r, &cover, m.columns(), 40).unwrap();
            let lt_syz = {
                let eng = engine();
                let span = PresentedModule::new(r.clone(), syz_cover.twists.clone(), vec![])
                    .unwrap();
                // Dimensions of the syzygy span inside its free cover:
                // dim F_d - dim (F/S)_d via the presented quotient.
                let quotient =
                    PresentedModule::new(r.clone(), syz_cover.twists.clone(), syz.clone())
                        .unwrap();
                let hf_free = eng.hilbert_function(&span, 8).unwrap();
                let hf_quot = eng.hilbert_function(&quotient, 8).unwrap();
                move |d: i64| hf_free.value(d) - hf_quot.value(d)
            };
            for d in 0..=6i64 {
                let mat = graded_map_matrix(
                    &r,
                    &syz_cover,
                    &cover,
                    m.columns(),
                    d,
                );
                let expect_kernel = (mat.cols - mat.clone().rank()) as u64;
                assert_eq!(
                    lt_syz(d),
                    expect_kernel,
                    "ring {:?} gens {gens:?} degree {d}",
                    r.relations.len()
                );
            }
        }
    }
}

#[test]
fn membership_stable_under_explicit_quotient_relations() {
    // Adjoining the ring relations explicitly to a generator list must not
    // change any membership answer.
    let r = hyper_xyzw();
    let m = cyclic(&r, &["x^2", "y*z"]);
    let cover = m.free_cover();
    let implicit = r.submodule_gb(&cover, m.columns(), 40).unwrap();
    let mut explicit_gens = m.columns().to_vec();
    explicit_gens.extend(r.quotient_relations_for(&cover));
    let explicit = r.submodule_gb(&cover, &explicit_gens, 40).unwrap();
    let mut state = 0x51ab1eu64;
    for _ in 0..40 {
        let deg = 1 + (state % 4) as u32;
        let f = random_homog(&r, &mut state, deg);
        let e = ModElement::unit(0, f);
        let a = betti_core::groebner::normal_form(&r.base, &e, &implicit).is_zero();
        let b = betti_core::groebner::normal_form(&r.base, &e, &explicit).is_zero();
        assert_eq!(a, b);
    }
}

#[test]
fn reduced_basis_shape() {
    // Reduced bases are monic and no term is divisible by another lead.
    let r = hyper_xy();
    let m = cyclic(&r, &["x^2 + y^2", "x*y"]);
    let gb = r.submodule_gb(&m.free_cover(), m.columns(), 40).unwrap();
    assert!(gb.reduced);
    assert!(betti_core::groebner::spairs_reduce_to_zero(&r.base, &gb));
    let leads: Vec<_> = gb
        .elements
        .iter()
        .map(|e| e.lead_term(gb.order, &gb.morder).unwrap())
        .map(|(p, m, c)| (p, m.clone(), c))
        .collect();
    for (i, e) in gb.elements.iter().enumerate() {
        assert_eq!(leads[i].2, 1, "monic lead");
        for (pos, poly) in e.comps() {
            for (mono, _) in poly.terms() {
                for (j, (lp, lm, _)) in leads.iter().enumerate() {
                    if i != j && lp == pos {
                        assert!(!lm.divides(mono), "term divisible by another lead");
                    }
                }
            }
        }
    }
}

#[test]
fn schreyer_order_induced_by_a_basis() {
    // Lead terms of the Koszul syzygy under the order induced by the
    // Groebner basis of (x, y): both candidate terms scale to x*y, so the
    // lower position wins.
    use betti_core::ModuleOrder;
    let r = poly_xy();
    let m = cyclic(&r, &["x", "y"]);
    let gb = r.submodule_gb(&m.free_cover(), m.columns(), 40).unwrap();
    let sch = gb.schreyer_order(ModuleOrder::TermOverPosition);
    let (_, syz) = syzygies_over_r(&r, &m.free_cover(), m.columns(), 40).unwrap();
    assert_eq!(syz.len(), 1);
    let lt = syz[0].lead_term(r.base.order, &sch).unwrap();
    assert_eq!(lt.0, 0, "tie on x*y broken toward the lower position");
}

#[test]
fn returned_syzygies_annihilate_the_generators() {
    // Soundness: applying any computed syzygy to the generator list gives
    // exactly zero over R.
    for r in [poly_xy(), hyper_xy(), hyper_xyzw()] {
        for gens in [vec!["x", "y"], vec!["x^2", "x*y", "y^2"]] {
            let m = cyclic(&r, &gens);
            let cover = m.free_cover();
            let (_, syz) = syzygies_over_r(&r, &cover, m.columns(), 40).unwrap();
            for s in &syz {
                let image = betti_core::resolution::apply_columns(&r, m.columns(), s);
                assert!(image.is_zero(), "syzygy fails on gens {gens:?}");
            }
        }
    }
}

#[test]
fn ring_dimension_matches_hilbert_polynomial_degree() {
    // dim R = 1 + deg of the Hilbert polynomial, read off stabilized finite
    // differences of the Hilbert function.
    let eng = engine();
    for (r, expect) in [
        (poly_xy(), 2usize),
        (hyper_xy(), 1),
        (hyper_xyzw(), 3),
        (ci_codim2(), 2),
    ] {
        assert_eq!(r.dimension, expect);
        let h = eng
            .hilbert_function(&PresentedModule::ring_module(r.clone()), 14)
            .unwrap();
        let mut values: Vec<i64> = (0..=14).map(|d| h.value(d) as i64).collect();
        let mut degree_plus_one = 0;
        // Difference until the tail (beyond presentation noise) vanishes.
        while !values[6..].iter().all(|&v| v == 0) {
            values = values.windows(2).map(|w| w[1] - w[0]).collect();
            degree_plus_one += 1;
            assert!(degree_plus_one < 8);
        }
        assert_eq!(degree_plus_one, r.dimension, "ring with dim {expect}");
    }
}

#[test]
fn betti_table_rejects_non_minimal_resolutions() {
    let eng = engine();
    let k = residue_field(&poly_xy());
    let res = eng.minimal_resolution(&k, 3).unwrap();
    let mut fake = (*res).clone();
    fake.minimal = false;
    assert!(eng.betti_table(&fake).is_err());
}

#[test]
fn groebner_membership_agrees_with_truncated_linear_algebra() {
    // 50 random small homogeneous ideals in <= 3 variables, generators of
    // degree <= 3: Groebner membership equals degree-truncated solvability.
    let mut state = 0x5eed_0f01_u64;
    let r = ring(&["x", "y", "z"], &[], TermOrder::GrevLex);
    for trial in 0..50 {
        let g1 = random_homog(&r, &mut state, 1 + (trial % 3) as u32);
        let g2 = random_homog(&r, &mut state, 1 + ((trial / 3) % 3) as u32);
        let gens = vec![g1.clone(), g2.clone()];
        let ideal = PresentedModule::quotient_by_ideal(r.clone(), &gens).unwrap();
        let cover = ideal.free_cover();
        let gb = r.submodule_gb(&cover, ideal.columns(), 40).unwrap();
        // random test element, homogeneous of degree <= 4
        let f = random_homog(&r, &mut state, 1 + (trial % 4) as u32);
        let in_gb = betti_core::groebner::normal_form(
            &r.base,
            &ModElement::unit(0, f.clone()),
            &gb,
        )
        .is_zero();
        let in_brute = brute_force_membership(&r, &gens, &f);
        assert_eq!(in_gb, in_brute, "trial {trial}");
    }
}
