use skewhh::complex::w::WComplex;
use skewhh::complex::{Margin, Window};
use skewhh::homology::solve::{certify_unchecked, CertifyOptions};
use skewhh::skew::families::usl2_spec;

fn main() {
    let spec = usl2_spec();
    let wc = WComplex::new(spec).unwrap();
    let w = Window::new(vec![0], 3, 8, 0);
    for (di, dadeg) in [(4u32, 8i64), (5, 10), (6, 12), (7, 14)] {
        let margin = Margin::new(di, dadeg, 0);
        let rep = certify_unchecked(&wc, &w, margin, &CertifyOptions::default()).unwrap();
        print!("di={} dadeg={:2}: ", di, dadeg);
        for m in 0..=4u32 {
            if let Some((d, c)) = rep.dim(0, m) {
                print!("H{}={}{} ", m, d, if c { "*" } else { "" });
            }
        }
        println!();
    }
}
