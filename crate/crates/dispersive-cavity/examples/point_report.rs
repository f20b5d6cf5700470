//! Every quantity the library reports, evaluated at one parameter point,
//! with the consistency identities spelled out: closed form vs numeric
//! entropy, E = F(C), and the Heisenberg floor of the uncertainty product.
//!
//!     cargo run --example point_report

use std::f64::consts::PI;

use dispersive_cavity::squeezing::squeezing_params;
use dispersive_cavity::{coherent_pair_state, entanglement_report, evolve, CoherentPrep, EffectiveH};

fn main() {
    let (theta, phi, tau) = (PI / 3.0, 0.0, 0.3);
    println!("state: theta = {theta:.6}, phi = {phi}, delta0_t = {tau}");
    println!();

    let r = entanglement_report(theta, phi, tau, 0.0).expect("valid parameters");
    println!("entropy (numeric pipeline)   {:.12}", r.entropy_numeric);
    println!("entropy (closed form)        {:.12}", r.entropy_closed);
    println!("concurrence                  {:.12}", r.concurrence);
    println!("entanglement of formation    {:.12}", r.eof);
    println!("mean spin |<J1>|             {:.12}", r.mean_spin_mag);
    println!(
        "probabilities                {:.6} {:.6} {:.6} {:.6}",
        r.probabilities[0], r.probabilities[1], r.probabilities[2], r.probabilities[3]
    );

    let psi = evolve(
        &coherent_pair_state(&CoherentPrep::pair(theta, phi).expect("valid angles"))
            .expect("pair preparation"),
        &EffectiveH::with_delta0(1.0, 0.0),
        tau,
    );
    let sq = squeezing_params(&psi);
    let v = sq.values.expect("mean spin is finite here");
    println!();
    println!("mean spin |<J>|              {:.12}", sq.mean_spin.magnitude);
    println!("dJx', dJy'                   {:.12}, {:.12}", v.djx_prime, v.djy_prime);
    println!("Sx, Sy                       {:.12}, {:.12}", v.sx, v.sy);
    println!("Smin over directions         {:.12}", v.smin);
    println!("uncertainty product          {:.12}", v.uncertainty_product);
    println!("Heisenberg floor |<J>|/2     {:.12}", v.bound);

    eprintln!();
    eprintln!("identities:");
    eprintln!("  |closed - numeric entropy| = {:.3e}", (r.entropy_closed - r.entropy_numeric).abs());
    eprintln!("  |F(C) - E|                 = {:.3e}", (r.eof - r.entropy_numeric).abs());
    eprintln!(
        "  product - floor            = {:+.3e} (nonnegative)",
        v.uncertainty_product - v.bound
    );
}
