use num_complex::Complex;
use pwsample_core::evolution::{collect_time_samples, evolve, vt_interpolate};
use pwsample_core::generators::make_complete_bipartite;
use pwsample_core::sampling::certify;
use pwsample_core::spectral::pw_project;
use pwsample_core::{eigendecompose, MeasureMode, Signal};

#[test]
fn bipartite_pipeline_in_f32() {
    let (g, s) = make_complete_bipartite::<f32>(5, 3, MeasureMode::Counting).unwrap();
    let spec = eigendecompose(&g).unwrap();
    let want = [0.0f32, 3.0, 3.0, 3.0, 3.0, 5.0, 5.0, 8.0];
    for (got, want) in spec.eigenvalues().iter().zip(want) {
        assert!((got - want).abs() < 1e-4, "{got} vs {want}");
    }

    let cert = certify(&g, &spec, &s, 4.0).unwrap();
    assert!((cert.sigma - 5.0).abs() < 1e-4);
    assert!((cert.poincare_complement - 5.0).abs() < 1e-4);
    assert!(cert.frame.lower > 0.0);

    let raw = Signal::from_real(&g, &[1.0, -0.5, 0.25, 2.0, 0.0, 1.5, -1.0, 0.5]).unwrap();
    let f = pw_project(&spec, &raw, 4.0).unwrap().signal;
    let back = cert.dual_frame.unwrap().reconstruct_signal(&f).unwrap();
    assert!(g.norm(&back.sub(&f).unwrap()).unwrap() < 1e-4 * g.norm(&f).unwrap());

    let ts = collect_time_samples(&spec, &f, 4.0, 200).unwrap();
    let got = vt_interpolate(&ts, 0.3).unwrap();
    let exact = evolve(&spec, &f, 0.3).unwrap();
    assert!(g.norm(&got.sub(&exact).unwrap()).unwrap() < 1e-3 * g.norm(&f).unwrap());
    assert_eq!(ts.sample(0).unwrap()[0], f[0]);
    let _: Complex<f32> = got[0];
}
