//! Insertion encodings and the map carrying flattened descents to big
//! descents.

use flatstat::bijection::{bij_g, bij_g_inv, bij_h, transport, BijectionError, InsertionEncoding};
use flatstat::perm::{StatKind, Statistic};

fn main() -> Result<(), BijectionError> {
    let e: InsertionEncoding = "0,2;1,1;0,3;1,2;0,3;1,1;0,5".parse()?;
    let g = bij_g(&e)?;
    let h = bij_h(&e)?;
    println!("encoding {e} has {} ones", e.ones());
    println!("g -> {g}");
    println!("h -> {h}");

    let sigma = g.to_permutation();
    let image = transport(&sigma);
    println!("g inverse of {sigma} -> {}", bij_g_inv(&sigma));
    println!(
        "transport {sigma} -> {image}: {} flattened descents, {} big descents",
        sigma.count(Statistic::flattened(StatKind::Des)),
        image.count(Statistic::plain(StatKind::BigDes))
    );
    Ok(())
}
