//! End-to-end determinism and output-shape checks for the simulation
//! harness at miniature scale.

use elliproj::harness::{write_power_table, write_sharpness_table};
use elliproj::{
    run_classification_experiment, run_mixture_comparison, run_power_study, run_sharpness_demo,
    Error, RngSeed, ScenarioSpec,
};

fn spec(json: &str) -> ScenarioSpec {
    serde_json::from_str(json).unwrap()
}

/// Identical configs give identical curves and identical CSV bytes.
#[test]
fn power_study_reruns_identically() {
    let s = spec(
        r#"{"scenario":"1","d":2,"n":30,"grid":[1,4],"replications":10,"bootstrap":100,"seed":5}"#,
    );
    s.validate().unwrap();
    let a = run_power_study(&s).unwrap();
    let b = run_power_study(&s).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.test, "rpt");
    assert_eq!(a.parameters, vec![1.0, 4.0]);
    assert!(a.rejections.iter().all(|&r| r <= 10));
    let table = |c: &elliproj::PowerCurve| {
        let mut buf = Vec::new();
        write_power_table(&mut buf, std::slice::from_ref(c)).unwrap();
        buf
    };
    assert_eq!(table(&a), table(&b));
    let text = String::from_utf8(table(&a)).unwrap();
    assert!(text.starts_with("test,parameter,rejections,replications,fraction,mc_se"));
    assert_eq!(text.lines().count(), 3, "header plus one row per grid point");
}

/// The mixture study reports one curve per test over the same grid.
#[test]
fn mixture_comparison_reports_both_tests() {
    let s = spec(
        r#"{"scenario":"mixture","d":2,"n":25,"grid":[0.0,1.5],"weights":[0.0,1.0,0.0],
            "replications":5,"bootstrap":100,"permutations":99,"seed":9}"#,
    );
    s.validate().unwrap();
    let curves = run_mixture_comparison(&s).unwrap();
    assert_eq!(curves.len(), 2);
    assert_eq!(curves[0].test, "rpt");
    assert_eq!(curves[1].test, "energy");
    for c in &curves {
        assert_eq!(c.parameters, vec![0.0, 1.5]);
        assert_eq!(c.replications, 5);
    }
    assert_eq!(curves, run_mixture_comparison(&s).unwrap());
}

/// The sharpness demonstration is deterministic and well-formed.
#[test]
fn sharpness_demo_is_deterministic() {
    let a = run_sharpness_demo(2, 60, 5, RngSeed::new(7)).unwrap();
    let b = run_sharpness_demo(2, 60, 5, RngSeed::new(7)).unwrap();
    assert_eq!(a, b);
    assert!(a.deficient_rejections <= 5 && a.full_rejections <= 5);
    let mut buf = Vec::new();
    write_sharpness_table(&mut buf, &a).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert!(text.contains("deficient") && text.contains("full"));
}

/// The classification experiment summarizes per-repetition accuracies
/// consistently and deterministically.
#[test]
fn classification_experiment_is_consistent() {
    let s = spec(
        r#"{"scenario":"classify","d":3,"class_size":30,"shift_coords":2,"shift_max":2.0,
            "replications":3,"seed":11}"#,
    );
    s.validate().unwrap();
    let summary = run_classification_experiment(&s).unwrap();
    assert_eq!(summary.accuracies.len(), 3);
    assert!(summary.accuracies.iter().all(|a| (0.0..=1.0).contains(a)));
    let mean = summary.accuracies.iter().sum::<f64>() / 3.0;
    assert!((summary.mean - mean).abs() < 1e-12);
    let var = summary.accuracies.iter().map(|a| (a - mean).powi(2)).sum::<f64>() / 2.0;
    assert!((summary.sd - var.sqrt()).abs() < 1e-12);
    assert_eq!(summary, run_classification_experiment(&s).unwrap());
}

/// Config validation and dispatch errors surface as BadConfig.
#[test]
fn invalid_scenarios_are_rejected() {
    // Scenario 1 degrees of freedom must be positive integers.
    let bad_grid =
        spec(r#"{"scenario":"1","grid":[1.5],"replications":5,"bootstrap":100,"seed":0}"#);
    assert!(matches!(bad_grid.validate(), Err(Error::BadConfig(_))));

    // Mixture weights must sum to one.
    let bad_weights = spec(
        r#"{"scenario":"mixture","weights":[0.5,0.2,0.2],"replications":5,
            "bootstrap":100,"seed":0}"#,
    );
    assert!(matches!(bad_weights.validate(), Err(Error::BadConfig(_))));

    // Permutation calibration needs at least 99 relabelings.
    let few_perms = spec(
        r#"{"scenario":"mixture","weights":[0.0,1.0,0.0],"permutations":50,
            "replications":5,"bootstrap":100,"seed":0}"#,
    );
    assert!(matches!(few_perms.validate(), Err(Error::BadConfig(_))));

    // Runners refuse scenarios of the wrong kind.
    let mixture = spec(
        r#"{"scenario":"mixture","weights":[0.0,1.0,0.0],"replications":5,
            "bootstrap":100,"seed":0}"#,
    );
    assert!(matches!(run_power_study(&mixture), Err(Error::BadConfig(_))));
    let tail = spec(r#"{"scenario":"1","replications":5,"bootstrap":100,"seed":0}"#);
    assert!(matches!(run_mixture_comparison(&tail), Err(Error::BadConfig(_))));
    assert!(matches!(run_classification_experiment(&tail), Err(Error::BadConfig(_))));

    // Unknown scenario tags fail at parse time.
    assert!(serde_json::from_str::<ScenarioSpec>(r#"{"scenario":"9"}"#).is_err());
    // Mixture without weights fails at parse time: no default exists.
    assert!(serde_json::from_str::<ScenarioSpec>(r#"{"scenario":"mixture"}"#).is_err());
}
