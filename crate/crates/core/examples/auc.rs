//! AUC and accuracy of a scored sample set.
//!
//!     cargo run --example auc

use motif_predict::eval::{accuracy, auc};

fn main() -> motif_predict::Result<()> {
    let scores = [0.91, 0.84, 0.62, 0.62, 0.55, 0.40, 0.33, 0.12];
    let labels = [true, true, false, true, true, false, false, false];
    println!("auc      {:.4}", auc(&scores, &labels)?);
    println!("accuracy {:.4}", accuracy(&scores, &labels, 0.5)?);

    let cubed: Vec<f64> = scores.iter().map(|x| x * x * x).collect();
    println!("auc of cubed scores {:.4}", auc(&cubed, &labels)?);
    println!("accuracy of cubed scores {:.4}", accuracy(&cubed, &labels, 0.5)?);
    Ok(())
}
