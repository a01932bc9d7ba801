//! Schubert cells of G2/Q, their images in F4/P, and the F4 cells with duals.
//!
//! `cargo run --example tables`

use liecone::cli::g2f4_tables;

fn print(title: &str, header: [&str; 4], rows: &[[String; 4]]) {
    println!("{title}");
    println!("  {:<12} {:<22} {:<12} {:<22}", header[0], header[1], header[2], header[3]);
    for r in rows {
        println!("  {:<12} {:<22} {:<12} {:<22}", r[0], r[1], r[2], r[3]);
    }
    println!();
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t = g2f4_tables()?;
    print("G2 cells", ["W^Q1", "dual", "W^Q2", "dual"], &t.g2_cells);
    print("G2 to F4", ["W^Q1", "image in W^P4", "W^Q2", "image in W^P1"], &t.images);
    print("F4 cells", ["W^P4", "dual", "W^P1", "dual"], &t.f4_cells);
    Ok(())
}
