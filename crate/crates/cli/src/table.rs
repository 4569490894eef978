use mnesor::laws::GradeWindow;
use mnesor::{FlatNumber, Mnesor, Polarity};

/// `ZERO`, `ALL`, then `PST·g` and `NGT·g` for ascending `g`.
pub fn operands(window: GradeWindow) -> Vec<Mnesor> {
    let mut out = vec![Mnesor::Zero, Mnesor::All];
    for polarity in [Polarity::Pst, Polarity::Ngt] {
        for g in window.min..=window.max {
            let grade = FlatNumber::new(g).expect("window grades are in range");
            out.push(Mnesor::graded(polarity, grade));
        }
    }
    out
}

pub fn render(symbol: &str, window: GradeWindow, op: impl Fn(Mnesor, Mnesor) -> Mnesor) -> String {
    let xs = operands(window);
    let mut cells: Vec<Vec<String>> = Vec::with_capacity(xs.len() + 1);
    let mut header = vec![symbol.to_string()];
    header.extend(xs.iter().map(Mnesor::to_string));
    cells.push(header);
    for &x in &xs {
        let mut row = vec![x.to_string()];
        row.extend(xs.iter().map(|&y| op(x, y).to_string()));
        cells.push(row);
    }
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(0);
    let mut out = String::new();
    for row in &cells {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        out.push_str(line.join(" ").trim_end());
        out.push('\n');
    }
    out
}
