use tatecoh::surgery::ScheduleStep;
use tatecoh::{
    browder_check, browder_pipeline, dimension_rows, glue, glue_rows, lens_complex,
    product_complex, tate_hypercohomology_range, AbelianInvariants, Exponent, Integer,
};

#[test]
fn torus_glue_onto_top() {
    let c = product_complex(2, &[1, 1]).unwrap();
    let (d, cert) = glue(&c, 1, 2).unwrap();
    assert!(cert.holds(), "{cert:?}");
    assert!(d.homology(1).unwrap().is_trivial());
    assert_eq!(d.homology(0).unwrap(), AbelianInvariants::free(1));
}

#[test]
fn lens_pipeline() {
    let p = browder_pipeline(&lens_complex(2, 2).unwrap()).unwrap();
    assert_eq!(p.n, 3);
    assert!(p.concentrated);
    assert!(p.gluing.certificates.iter().all(|c| c.holds()));
    assert_eq!(p.penultimate_cohomology, AbelianInvariants::cyclic(2));
    assert!(p.cross_check && p.sections_match && p.verdict.divides);
}

#[test]
fn torus_pipeline() {
    let p = browder_pipeline(&product_complex(2, &[1, 1]).unwrap()).unwrap();
    assert!(p.concentrated);
    assert_eq!(p.penultimate_cohomology, AbelianInvariants::cyclic(4));
    assert!(p.cross_check && p.sections_match && p.verdict.divides);
}

#[test]
fn torus_browder_product() {
    let r = browder_check(&product_complex(2, &[1, 1]).unwrap()).unwrap();
    assert_eq!(r.product, Exponent::Finite(Integer::from(4)));
    assert!(r.divides);
}

#[test]
fn odd_torus_of_three_spheres() {
    let r = browder_check(&product_complex(3, &[2, 2]).unwrap()).unwrap();
    assert!(r.divides, "{r:?}");
}

#[test]
fn row_schedule_on_circle_times_three_sphere() {
    let c = product_complex(2, &[1, 2]).unwrap();
    let rows = dimension_rows(&[3, 1]);
    assert_eq!(rows.rows, vec![vec![3, 1], vec![4]]);
    let out = glue_rows(&c, &rows.schedule()).unwrap();
    let support: Vec<i32> = (out.complex.lo()..=out.complex.hi())
        .filter(|&i| !out.complex.homology(i).unwrap().is_trivial())
        .collect();
    assert_eq!(support, vec![0, 3, 6]);
    assert!(out.certificates.iter().all(|c| c.holds()));
    let before = tate_hypercohomology_range(&c, -2, 3).unwrap();
    let after = tate_hypercohomology_range(&out.complex, -2, 3).unwrap();
    assert_eq!(before, after);
}

#[test]
fn single_step_schedule_matches_glue() {
    let c = lens_complex(3, 1).unwrap();
    let (d, _) = glue(&c, 0, 1).unwrap();
    let out = glue_rows(
        &c,
        &[ScheduleStep {
            sources: vec![0],
            target: 1,
        }],
    )
    .unwrap();
    assert_eq!(out.complex, d);
}
