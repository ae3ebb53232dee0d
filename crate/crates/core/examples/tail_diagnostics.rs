//! How far the FIG log-kernel slope is from the GG slope.

use figdist::FigParams;

fn main() -> figdist::Result<()> {
    println!("z\t(2,2)\t(4,1.5)\t(0.8,1.2)");
    let sets = [FigParams::standard(2.0, 2.0, 1.0)?, FigParams::standard(4.0, 1.5, 1.0)?, FigParams::standard(0.8, 1.2, 1.0)?];
    for z in [1e-6, 1e-3, 0.1, 1.0, 5.0, 20.0, 100.0] {
        let row: Vec<String> = sets.iter().map(|p| format!("{:.4e}", p.gg_log_kernel_diff(z).unwrap())).collect();
        println!("{z}\t{}", row.join("\t"));
    }
    println!("residual after removing the shared growth:");
    for z in [5.0, 20.0, 100.0, 1000.0] {
        let row: Vec<String> = sets.iter().map(|p| format!("{:.4e}", p.tail_residual(z).unwrap())).collect();
        println!("{z}\t{}", row.join("\t"));
    }
    Ok(())
}
