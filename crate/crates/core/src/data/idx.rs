//! Big-endian image/label pairs in the classic digit-benchmark layout:
//! images carry magic 2051 and a `count x rows x cols` byte tensor, labels
//! carry magic 2049 and one byte per image. Pixels are scaled to [0, 1];
//! label byte `v` becomes class `v + 1`.

use std::io::Cursor;
use std::path::Path;

use byteorder::{BigEndian, ReadBytesExt, WriteBytesExt};
use ndarray::Array2;

use crate::error::{Error, Result};
use crate::model::LabeledDataset;

use super::{DatasetSpec, LoadedDataset};

const IMAGE_MAGIC: u32 = 2051;
const LABEL_MAGIC: u32 = 2049;

fn read_file(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn format_error(path: &Path, offset: u64, message: impl Into<String>) -> Error {
    Error::Format {
        path: path.to_path_buf(),
        offset,
        message: message.into(),
    }
}

fn read_header(path: &Path, bytes: &[u8], magic: u32, dims: usize) -> Result<Vec<usize>> {
    let header_len = 4 * (1 + dims);
    if bytes.len() < header_len {
        return Err(format_error(
            path,
            bytes.len() as u64,
            format!("file too short for a {header_len}-byte header"),
        ));
    }
    let mut cursor = Cursor::new(bytes);
    let found = cursor.read_u32::<BigEndian>().expect("length checked");
    if found != magic {
        return Err(format_error(
            path,
            0,
            format!("bad magic: expected {magic}, found {found}"),
        ));
    }
    (0..dims)
        .map(|_| Ok(cursor.read_u32::<BigEndian>().expect("length checked") as usize))
        .collect()
}

pub(super) fn load_idx(spec: &DatasetSpec) -> Result<LoadedDataset> {
    let labels_path = spec.labels_path.as_ref().ok_or_else(|| {
        Error::InvalidHyperparam("idx datasets need a companion label file".into())
    })?;

    let image_bytes = read_file(&spec.path)?;
    let dims = read_header(&spec.path, &image_bytes, IMAGE_MAGIC, 3)?;
    let (count, rows, cols) = (dims[0], dims[1], dims[2]);
    let expected = 16 + count * rows * cols;
    if image_bytes.len() != expected {
        return Err(format_error(
            &spec.path,
            image_bytes.len().min(expected) as u64,
            format!("expected {expected} bytes, found {}", image_bytes.len()),
        ));
    }

    let label_bytes = read_file(labels_path)?;
    let label_dims = read_header(labels_path, &label_bytes, LABEL_MAGIC, 1)?;
    if label_dims[0] != count {
        return Err(format_error(
            labels_path,
            4,
            format!("{} labels for {count} images", label_dims[0]),
        ));
    }
    if label_bytes.len() != 8 + count {
        return Err(format_error(
            labels_path,
            label_bytes.len().min(8 + count) as u64,
            format!("expected {} bytes, found {}", 8 + count, label_bytes.len()),
        ));
    }

    let pixels = &image_bytes[16..];
    let d = rows * cols;
    let mut features = Array2::zeros((d, count));
    for j in 0..count {
        for i in 0..d {
            features[(i, j)] = f64::from(pixels[j * d + i]) / 255.0;
        }
    }
    let raw_labels = &label_bytes[8..];
    let max_value = raw_labels.iter().copied().max().unwrap_or(0);
    let class_count = usize::from(max_value) + 1;
    let labels = raw_labels.iter().map(|&v| usize::from(v) + 1).collect();
    let label_names = (0..class_count).map(|v| v.to_string()).collect();

    let dataset = LabeledDataset::new(features, labels, class_count)?;
    Ok(LoadedDataset {
        dataset,
        label_names,
    })
}

/// Write an image tensor; `pixels` holds row-major images back to back.
pub fn write_idx_images(
    path: impl AsRef<Path>,
    rows: usize,
    cols: usize,
    pixels: &[u8],
) -> Result<()> {
    let path = path.as_ref();
    let image_size = rows * cols;
    if image_size == 0 || !pixels.len().is_multiple_of(image_size) {
        return Err(Error::DimensionMismatch {
            context: "pixel buffer not a multiple of the image size",
            expected: image_size,
            actual: pixels.len(),
        });
    }
    let count = pixels.len() / image_size;
    let mut bytes = Vec::with_capacity(16 + pixels.len());
    bytes.write_u32::<BigEndian>(IMAGE_MAGIC).expect("vec write");
    bytes.write_u32::<BigEndian>(count as u32).expect("vec write");
    bytes.write_u32::<BigEndian>(rows as u32).expect("vec write");
    bytes.write_u32::<BigEndian>(cols as u32).expect("vec write");
    bytes.extend_from_slice(pixels);
    std::fs::write(path, bytes).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Write a label file with one byte per sample.
pub fn write_idx_labels(path: impl AsRef<Path>, labels: &[u8]) -> Result<()> {
    let path = path.as_ref();
    let mut bytes = Vec::with_capacity(8 + labels.len());
    bytes.write_u32::<BigEndian>(LABEL_MAGIC).expect("vec write");
    bytes
        .write_u32::<BigEndian>(labels.len() as u32)
        .expect("vec write");
    bytes.extend_from_slice(labels);
    std::fs::write(path, bytes).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec_for(dir: &tempfile::TempDir, pixels: &[u8], labels: &[u8], rows: usize, cols: usize) -> DatasetSpec {
        let images = dir.path().join("images");
        let labels_file = dir.path().join("labels");
        write_idx_images(&images, rows, cols, pixels).unwrap();
        write_idx_labels(&labels_file, labels).unwrap();
        DatasetSpec::idx(images, labels_file)
    }

    #[test]
    fn loads_scaled_pixels_and_shifted_labels() {
        let dir = tempfile::tempdir().unwrap();
        let pixels = [0u8, 255, 51, 102, 153, 204, 10, 20];
        let spec = spec_for(&dir, &pixels, &[0, 2], 2, 2);
        let loaded = load_idx(&spec).unwrap();
        assert_eq!(loaded.dataset.feature_dim(), 4);
        assert_eq!(loaded.dataset.sample_count(), 2);
        assert_eq!(loaded.dataset.labels(), &[1, 3]);
        assert_eq!(loaded.dataset.class_count(), 3);
        assert_eq!(loaded.label_names, vec!["0", "1", "2"]);
        assert_eq!(loaded.dataset.features()[(0, 0)], 0.0);
        assert_eq!(loaded.dataset.features()[(1, 0)], 1.0);
        assert!((loaded.dataset.features()[(2, 0)] - 0.2).abs() < 1e-15);
        assert!((loaded.dataset.features()[(0, 1)] - 0.6).abs() < 1e-15);
    }

    #[test]
    fn loading_then_rewriting_reproduces_the_bytes() {
        let dir = tempfile::tempdir().unwrap();
        let pixels: Vec<u8> = (0u8..=255).collect();
        let labels: Vec<u8> = (0..4).collect();
        let spec = spec_for(&dir, &pixels, &labels, 8, 8);
        let loaded = load_idx(&spec).unwrap();

        // Undo the scaling exactly: pixels are k/255, so k = v * 255 rounded.
        let recovered: Vec<u8> = loaded
            .dataset
            .features()
            .columns()
            .into_iter()
            .flat_map(|col| {
                col.iter()
                    .map(|v| (v * 255.0).round() as u8)
                    .collect::<Vec<_>>()
            })
            .collect();
        let relabeled: Vec<u8> = loaded.dataset.labels().iter().map(|&l| (l - 1) as u8).collect();

        let images2 = dir.path().join("images2");
        let labels2 = dir.path().join("labels2");
        write_idx_images(&images2, 8, 8, &recovered).unwrap();
        write_idx_labels(&labels2, &relabeled).unwrap();
        assert_eq!(
            std::fs::read(dir.path().join("images")).unwrap(),
            std::fs::read(images2).unwrap()
        );
        assert_eq!(
            std::fs::read(dir.path().join("labels")).unwrap(),
            std::fs::read(labels2).unwrap()
        );
    }

    #[test]
    fn bad_magic_is_reported_at_offset_zero() {
        let dir = tempfile::tempdir().unwrap();
        let images = dir.path().join("images");
        write_idx_images(&images, 2, 2, &[1, 2, 3, 4]).unwrap();
        let mut bytes = std::fs::read(&images).unwrap();
        bytes[0] = 9; // corrupt the magic without changing the length
        std::fs::write(&images, bytes).unwrap();
        let labels = dir.path().join("labels");
        write_idx_labels(&labels, &[0]).unwrap();
        let spec = DatasetSpec::idx(images, labels);
        match load_idx(&spec) {
            Err(Error::Format { offset: 0, .. }) => {}
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn truncated_pixel_data_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let images = dir.path().join("images");
        write_idx_images(&images, 2, 2, &[1, 2, 3, 4]).unwrap();
        let mut bytes = std::fs::read(&images).unwrap();
        bytes.pop();
        std::fs::write(&images, bytes).unwrap();
        let labels = dir.path().join("labels");
        write_idx_labels(&labels, &[0]).unwrap();
        let spec = DatasetSpec::idx(images, labels);
        match load_idx(&spec) {
            Err(Error::Format { offset: 19, .. }) => {}
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn count_mismatch_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let spec = spec_for(&dir, &[1, 2, 3, 4], &[0, 1], 2, 2);
        match load_idx(&spec) {
            Err(Error::Format { offset: 4, .. }) => {}
            other => panic!("unexpected: {other:?}"),
        }
    }
}
