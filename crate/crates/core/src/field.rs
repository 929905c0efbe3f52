//! Complex fields `psi[n][j]` over time index `n` and space index `j`.
//!
//! Two on-disk layouts are supported:
//!
//! * CSV with columns `n,j,re,im`, one row per site in row-major order.
//!   Lines starting with `#` are comments.
//! * A compact little-endian binary layout: the 4-byte magic `KGL1`, `u32 Nt`,
//!   `u32 Nx`, four reserved zero bytes, then `Nt * Nx` complex doubles
//!   (`re`, `im`) in row-major order.

use std::io::{Read, Write};

use num_complex::Complex64;

use crate::error::{domain, LatticeError, Result};
use crate::grid::GridSpec;

pub const BINARY_MAGIC: &[u8; 4] = b"KGL1";
pub const BINARY_HEADER_LEN: usize = 16;

/// Column names of the slab CSV layout.
pub const SLAB_CSV_COLUMNS: [&str; 4] = ["n", "j", "re", "im"];

#[derive(Debug, Clone, PartialEq)]
pub struct FieldSlab {
    psi: Vec<Complex64>,
    grid: GridSpec,
}

impl FieldSlab {
    /// Wraps row-major samples. The grid extents must match `psi.len()`.
    pub fn new(grid: GridSpec, psi: Vec<Complex64>) -> Result<Self> {
        if grid.nt * grid.nx != psi.len() {
            return domain(format!(
                "slab of {} samples does not match grid extents {}x{}",
                psi.len(),
                grid.nt,
                grid.nx
            ));
        }
        Ok(FieldSlab { psi, grid })
    }

    pub fn zeros(grid: GridSpec) -> Self {
        FieldSlab { psi: vec![Complex64::new(0.0, 0.0); grid.nt * grid.nx], grid }
    }

    pub fn from_fn(grid: GridSpec, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut psi = Vec::with_capacity(grid.nt * grid.nx);
        for n in 0..grid.nt {
            for j in 0..grid.nx {
                psi.push(f(n, j));
            }
        }
        FieldSlab { psi, grid }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn nt(&self) -> usize {
        self.grid.nt
    }

    pub fn nx(&self) -> usize {
        self.grid.nx
    }

    pub fn get(&self, n: usize, j: usize) -> Complex64 {
        self.psi[n * self.grid.nx + j]
    }

    pub fn set(&mut self, n: usize, j: usize, v: Complex64) {
        let nx = self.grid.nx;
        self.psi[n * nx + j] = v;
    }

    pub fn row(&self, n: usize) -> &[Complex64] {
        let nx = self.grid.nx;
        &self.psi[n * nx..(n + 1) * nx]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.psi
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.psi
    }

    pub fn max_abs(&self) -> f64 {
        self.psi.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest site-wise deviation between two slabs of equal shape.
    pub fn max_abs_diff(&self, other: &FieldSlab) -> Result<f64> {
        if self.nt() != other.nt() || self.nx() != other.nx() {
            return domain(format!(
                "slab shapes differ: {}x{} vs {}x{}",
                self.nt(),
                self.nx(),
                other.nt(),
                other.nx()
            ));
        }
        Ok(self
            .psi
            .iter()
            .zip(&other.psi)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> FieldSlab {
        FieldSlab { psi: self.psi.iter().map(|&z| f(z)).collect(), grid: self.grid }
    }

    /// Writes the CSV layout. `header` lines are emitted first, each prefixed with `# `.
    pub fn write_csv<W: Write>(&self, out: W, header: &[String]) -> Result<()> {
        let mut out = out;
        for line in header {
            writeln!(out, "# {line}")?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(SLAB_CSV_COLUMNS).map_err(csv_err)?;
        for n in 0..self.nt() {
            for j in 0..self.nx() {
                let z = self.get(n, j);
                w.write_record([n.to_string(), j.to_string(), z.re.to_string(), z.im.to_string()])
                    .map_err(csv_err)?;
            }
        }
        w.flush()?;
        Ok(())
    }

    /// Reads the CSV layout. Sites must be listed in row-major order starting at (0, 0).
    pub fn read_csv<R: Read>(input: R, grid: GridSpec) -> Result<FieldSlab> {
        let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(input);
        let headers = rdr.headers().map_err(csv_err)?.clone();
        if headers.iter().collect::<Vec<_>>() != SLAB_CSV_COLUMNS {
            return Err(LatticeError::Format(format!("unexpected slab columns {headers:?}")));
        }
        let mut psi = Vec::new();
        let (mut max_n, mut max_j) = (0usize, 0usize);
        for (idx, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(csv_err)?;
            let field = |i: usize| rec.get(i).unwrap_or("");
            let n: usize = field(0).parse().map_err(|e| fmt_err(idx, e))?;
            let j: usize = field(1).parse().map_err(|e| fmt_err(idx, e))?;
            let re: f64 = field(2).parse().map_err(|e| fmt_err(idx, e))?;
            let im: f64 = field(3).parse().map_err(|e| fmt_err(idx, e))?;
            max_n = max_n.max(n);
            max_j = max_j.max(j);
            psi.push(((n, j), Complex64::new(re, im)));
        }
        let (nt, nx) = if psi.is_empty() { (0, 0) } else { (max_n + 1, max_j + 1) };
        for (k, ((n, j), _)) in psi.iter().enumerate() {
            if nx == 0 || *n != k / nx || *j != k % nx {
                return Err(LatticeError::Format(format!(
                    "slab row {k} has site ({n}, {j}); sites must be complete and row-major"
                )));
            }
        }
        FieldSlab::new(grid.with_extents(nt, nx), psi.into_iter().map(|(_, z)| z).collect())
    }

    pub fn write_binary<W: Write>(&self, mut out: W) -> Result<()> {
        let nt = u32::try_from(self.nt()).map_err(|_| LatticeError::Format("Nt exceeds u32".into()))?;
        let nx = u32::try_from(self.nx()).map_err(|_| LatticeError::Format("Nx exceeds u32".into()))?;
        let mut buf = Vec::with_capacity(BINARY_HEADER_LEN + 16 * self.psi.len());
        buf.extend_from_slice(BINARY_MAGIC);
        buf.extend_from_slice(&nt.to_le_bytes());
        buf.extend_from_slice(&nx.to_le_bytes());
        buf.extend_from_slice(&[0u8; 4]);
        for z in &self.psi {
            buf.extend_from_slice(&z.re.to_le_bytes());
            buf.extend_from_slice(&z.im.to_le_bytes());
        }
        out.write_all(&buf)?;
        Ok(())
    }

    pub fn read_binary<R: Read>(mut input: R, grid: GridSpec) -> Result<FieldSlab> {
        let mut header = [0u8; BINARY_HEADER_LEN];
        input.read_exact(&mut header)?;
        if &header[0..4] != BINARY_MAGIC {
            return Err(LatticeError::Format(format!("bad magic {:?}", &header[0..4])));
        }
        let nt = u32::from_le_bytes(header[4..8].try_into().unwrap()) as usize;
        let nx = u32::from_le_bytes(header[8..12].try_into().unwrap()) as usize;
        let mut body = Vec::new();
        input.read_to_end(&mut body)?;
        if body.len() != 16 * nt * nx {
            return Err(LatticeError::Format(format!(
                "binary body has {} bytes, expected {} for {nt}x{nx}",
                body.len(),
                16 * nt * nx
            )));
        }
        let psi = body
            .chunks_exact(16)
            .map(|c| {
                Complex64::new(
                    f64::from_le_bytes(c[0..8].try_into().unwrap()),
                    f64::from_le_bytes(c[8..16].try_into().unwrap()),
                )
            })
            .collect();
        FieldSlab::new(grid.with_extents(nt, nx), psi)
    }
}

fn csv_err(e: csv::Error) -> LatticeError {
    LatticeError::Format(e.to_string())
}

fn fmt_err(row: usize, e: impl std::fmt::Display) -> LatticeError {
    LatticeError::Format(format!("slab row {row}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> FieldSlab {
        FieldSlab::from_fn(GridSpec::natural(3, 4), |n, j| {
            Complex64::new(n as f64 + 0.1, -(j as f64) / 3.0)
        })
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let slab = sample();
        let mut buf = Vec::new();
        slab.write_csv(&mut buf, &["hello".into()]).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("# hello\nn,j,re,im\n0,0,0.1,"));
        let back = FieldSlab::read_csv(&buf[..], GridSpec::default()).unwrap();
        assert_eq!(back, slab);
    }

    #[test]
    fn binary_layout_and_round_trip() {
        let slab = sample();
        let mut buf = Vec::new();
        slab.write_binary(&mut buf).unwrap();
        assert_eq!(buf.len(), 16 + 16 * 12);
        assert_eq!(&buf[0..4], b"KGL1");
        assert_eq!(&buf[4..8], &3u32.to_le_bytes());
        assert_eq!(&buf[8..12], &4u32.to_le_bytes());
        assert_eq!(&buf[12..16], &[0; 4]);
        assert_eq!(&buf[16..24], &0.1f64.to_le_bytes());
        let back = FieldSlab::read_binary(&buf[..], GridSpec::default()).unwrap();
        assert_eq!(back, slab);
    }

    #[test]
    fn binary_rejects_bad_magic_and_truncation() {
        let mut buf = Vec::new();
        sample().write_binary(&mut buf).unwrap();
        let mut bad = buf.clone();
        bad[0] = b'X';
        assert!(FieldSlab::read_binary(&bad[..], GridSpec::default()).is_err());
        buf.pop();
        assert!(FieldSlab::read_binary(&buf[..], GridSpec::default()).is_err());
    }

    #[test]
    fn csv_rejects_out_of_order_sites() {
        let text = "n,j,re,im\n0,1,0,0\n0,0,0,0\n";
        assert!(FieldSlab::read_csv(text.as_bytes(), GridSpec::default()).is_err());
    }

    #[test]
    fn shape_mismatch_is_a_domain_error() {
        assert!(FieldSlab::new(GridSpec::natural(2, 2), vec![Complex64::new(0.0, 0.0); 3]).is_err());
    }
}
