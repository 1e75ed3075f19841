//! CSV export of distance profiles.

use std::io::Write;

use prodseq_core::analysis::TraceRow;

use crate::LabError;

pub const HEADER: [&str; 5] = ["index", "l", "m", "distance-num", "distance-den"];

pub fn write_trace<W: Write>(out: W, rows: &[TraceRow]) -> Result<(), LabError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for r in rows {
        w.write_record([
            r.index.to_string(),
            r.l.to_string(),
            r.m.to_string(),
            r.distance.numer().to_string(),
            r.distance.denom().to_string(),
        ])?;
    }
    w.flush().map_err(|e| LabError::io("<csv>", e))?;
    Ok(())
}

pub fn trace_to_string(rows: &[TraceRow]) -> String {
    let mut buf = Vec::new();
    write_trace(&mut buf, rows).expect("writing to memory");
    String::from_utf8(buf).expect("CSV of integers is ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn header_and_rows() {
        let rows = [TraceRow { index: 0, l: 0, m: 3, distance: BigRational::new(1.into(), 4.into()) }];
        assert_eq!(trace_to_string(&rows), "index,l,m,distance-num,distance-den\n0,0,3,1,4\n");
    }
}
