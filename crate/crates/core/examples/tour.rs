//! A short tour: one headline number from each module.

use qcorr::capacity::find_p0;
use qcorr::discord::{geometric_discord_mn, werner_state};
use qcorr::fermion::dimer_entanglements;
use qcorr::measures::{concurrence, eof_from_concurrence};
use qcorr::qstate::{from_pure, PartitionSpec, PureStateVector};
use qcorr::thermal_xx::{critical_temperature, qd_cc, thermal_state, XXParams};
use qcorr::{CVec, C64};

fn main() -> qcorr::Result<()> {
    // maximally entangled two-qubit state
    let bell = {
        let inv = 1.0 / 2f64.sqrt();
        let mut amp = CVec::zeros(4);
        amp[0] = C64::new(inv, 0.0);
        amp[3] = C64::new(inv, 0.0);
        PureStateVector::new(vec![2, 2], amp)?
    };
    let rho = from_pure(&bell);
    println!("Bell concurrence        {:.6}", concurrence(&rho)?);
    println!(
        "Bell EoF                {:.6}",
        eof_from_concurrence(concurrence(&rho)?)?
    );
    println!(
        "Bell geometric E        {:.6}",
        qcorr::measures::geometric_entanglement(&bell, &PartitionSpec::singletons(&[2, 2]))?
    );

    let (p0, gmax) = find_p0();
    println!("two-qubit capacity      p0 = {p0:.6}, rate {gmax:.5} per unit coupling");

    let dimer = dimer_entanglements(2.0)?;
    println!(
        "dimer at alpha = 2      E_g = {:.6}, E_s = {:.6}",
        dimer.e_g, dimer.e_s
    );

    let p = XXParams::new(1.0, 1.0, -1.0, 0.9)?;
    let q = qd_cc(&thermal_state(&p)?.rho)?;
    println!("XX at B1 = -B2 = 1      QD = {:.6}, CC = {:.6}", q.qd, q.cc);
    println!(
        "XX critical T (B1 = 0)  {:.5}",
        critical_temperature(0.0, 1.0)?
    );

    let werner = werner_state(3, 0.9)?;
    println!(
        "Werner m=3, z=0.9       D = {:.6}",
        geometric_discord_mn(&werner)?.d_formula
    );
    Ok(())
}
