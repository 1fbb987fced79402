use kbundle::algebra::{parse_polynomial, Rationals, Ring};
use kbundle::bundle::SyzygyBundleSpec;
use kbundle::stability::{hoppe_check, Mode};
use kbundle::{Engine, Limits};

fn main() -> kbundle::Result<()> {
    let ring = Ring::projective(Rationals, 2);
    let gens = ["X^3", "Y^3", "Z^3", "X*Y*Z"]
        .iter()
        .map(|s| parse_polynomial(s, &ring))
        .collect::<kbundle::Result<Vec<_>>>()?;
    let bundle = SyzygyBundleSpec::new(gens, 4)?.to_bundle()?;
    let report = hoppe_check(&bundle, Engine::Linalg, Mode::StabilityEvidence, &Limits::default())?;
    println!("{:?} {:?}", report.verdict, report.stability);
    Ok(())
}
