//! Emits the three plot tables as CSV files: the eof-vs-concurrence curve,
//! the monogamy region scatter, and the power-mean level curves.
//!
//! ```bash
//! cargo run --release -p entmono --example region_plots
//! ```

use entmono::cli::{plot_fig2, plot_fig3, plot_fig9};
use entmono::monogamy::MeasureId;

fn main() {
    std::fs::create_dir_all("plot_data").unwrap();

    let fig2 = plot_fig2();
    std::fs::write("plot_data/eof_vs_csq.csv", &fig2).unwrap();
    println!("wrote plot_data/eof_vs_csq.csv ({} rows)", fig2.lines().count() - 1);

    let fig3 = plot_fig3(MeasureId::ConcurrenceSq, &[2, 2, 2], 2000, 0, 1.0).unwrap();
    std::fs::write("plot_data/ckw_region.csv", &fig3).unwrap();
    println!("wrote plot_data/ckw_region.csv ({} rows)", fig3.lines().count() - 1);

    let eof_region = plot_fig3(MeasureId::Eof, &[2, 2, 2], 2000, 0, 1.0).unwrap();
    std::fs::write("plot_data/eof_region.csv", &eof_region).unwrap();
    println!("wrote plot_data/eof_region.csv ({} rows)", eof_region.lines().count() - 1);

    let fig9 = plot_fig9();
    std::fs::write("plot_data/power_mean_curves.csv", &fig9).unwrap();
    println!("wrote plot_data/power_mean_curves.csv ({} rows)", fig9.lines().count() - 1);

    println!("\ncolumns:");
    println!("  eof_vs_csq.csv:        c_sq,eof");
    println!("  ckw_region.csv:        sample_index,e_ab,e_ac,e_abc,x_norm,y_norm,bound45,bound46");
    println!("  eof_region.csv:        same, with eof values in bits");
    println!("  power_mean_curves.csv: alpha,e_ab,e_ac");
}
