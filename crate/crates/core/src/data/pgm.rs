//! Directory-tree image datasets: one subdirectory per class, holding
//! binary (P5) PGM files with an 8-bit range. Classes are numbered by
//! lexicographic subdirectory order; files within a class load in
//! lexicographic order. Images are optionally nearest-neighbor resized.

use std::path::{Path, PathBuf};

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::model::LabeledDataset;

use super::{DatasetSpec, LoadedDataset};

struct Image {
    height: usize,
    width: usize,
    pixels: Vec<u8>,
}

fn format_error(path: &Path, offset: usize, message: impl Into<String>) -> Error {
    Error::Format {
        path: path.to_path_buf(),
        offset: offset as u64,
        message: message.into(),
    }
}

fn skip_separators(bytes: &[u8], mut pos: usize) -> usize {
    while pos < bytes.len() {
        match bytes[pos] {
            b' ' | b'\t' | b'\r' | b'\n' => pos += 1,
            b'#' => {
                while pos < bytes.len() && bytes[pos] != b'\n' {
                    pos += 1;
                }
            }
            _ => break,
        }
    }
    pos
}

fn read_number(path: &Path, bytes: &[u8], pos: usize) -> Result<(usize, usize)> {
    let start = skip_separators(bytes, pos);
    let mut end = start;
    while end < bytes.len() && bytes[end].is_ascii_digit() {
        end += 1;
    }
    if end == start {
        return Err(format_error(path, start, "expected a decimal number"));
    }
    let text = std::str::from_utf8(&bytes[start..end]).expect("ascii digits");
    let value = text
        .parse()
        .map_err(|_| format_error(path, start, format!("number {text} out of range")))?;
    Ok((value, end))
}

fn parse_pgm(path: &Path) -> Result<Image> {
    let bytes = std::fs::read(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    if bytes.len() < 2 || &bytes[..2] != b"P5" {
        return Err(format_error(path, 0, "not a binary PGM (magic must be P5)"));
    }
    let (width, pos) = read_number(path, &bytes, 2)?;
    let (height, pos) = read_number(path, &bytes, pos)?;
    let (maxval, pos) = read_number(path, &bytes, pos)?;
    if maxval != 255 {
        return Err(format_error(
            path,
            pos,
            format!("unsupported max value {maxval}, expected 255"),
        ));
    }
    if pos >= bytes.len() || !bytes[pos].is_ascii_whitespace() {
        return Err(format_error(path, pos, "expected whitespace before pixel data"));
    }
    let data_start = pos + 1;
    let expected = width * height;
    let available = bytes.len() - data_start;
    if available < expected {
        return Err(format_error(
            path,
            bytes.len(),
            format!("truncated pixel data: expected {expected} bytes, found {available}"),
        ));
    }
    if available > expected {
        return Err(format_error(
            path,
            data_start + expected,
            format!("{} trailing bytes after pixel data", available - expected),
        ));
    }
    Ok(Image {
        height,
        width,
        pixels: bytes[data_start..].to_vec(),
    })
}

fn resize_nearest(image: &Image, height: usize, width: usize) -> Vec<u8> {
    if image.height == height && image.width == width {
        return image.pixels.clone();
    }
    let mut out = Vec::with_capacity(height * width);
    for r in 0..height {
        let src_r = r * image.height / height;
        for c in 0..width {
            let src_c = c * image.width / width;
            out.push(image.pixels[src_r * image.width + src_c]);
        }
    }
    out
}

fn sorted_entries(dir: &Path, want_dirs: bool) -> Result<Vec<PathBuf>> {
    let read = std::fs::read_dir(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut entries = Vec::new();
    for entry in read {
        let entry = entry.map_err(|source| Error::Io {
            path: dir.to_path_buf(),
            source,
        })?;
        let path = entry.path();
        if path
            .file_name()
            .and_then(|n| n.to_str())
            .is_some_and(|n| n.starts_with('.'))
        {
            continue;
        }
        if path.is_dir() == want_dirs {
            entries.push(path);
        }
    }
    entries.sort();
    Ok(entries)
}

pub(super) fn load_image_dir(spec: &DatasetSpec) -> Result<LoadedDataset> {
    let class_dirs = sorted_entries(&spec.path, true)?;
    if class_dirs.is_empty() {
        return Err(format_error(&spec.path, 0, "no class subdirectories"));
    }

    let mut dims = spec.expected_dims;
    let mut columns: Vec<Vec<u8>> = Vec::new();
    let mut labels: Vec<usize> = Vec::new();
    let mut label_names: Vec<String> = Vec::new();

    for (class_index, class_dir) in class_dirs.iter().enumerate() {
        let files = sorted_entries(class_dir, false)?;
        if files.is_empty() {
            return Err(Error::EmptyClass {
                class: class_index + 1,
            });
        }
        label_names.push(
            class_dir
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default(),
        );
        for file in files {
            let image = parse_pgm(&file)?;
            let (height, width) = *dims.get_or_insert((image.height, image.width));
            if spec.expected_dims.is_none() && (image.height, image.width) != (height, width) {
                return Err(format_error(
                    &file,
                    0,
                    format!(
                        "image is {}x{}, expected {height}x{width} like the rest",
                        image.height, image.width
                    ),
                ));
            }
            columns.push(resize_nearest(&image, height, width));
            labels.push(class_index + 1);
        }
    }

    let (height, width) = dims.expect("at least one image loaded");
    let d = height * width;
    let mut features = Array2::zeros((d, columns.len()));
    for (j, pixels) in columns.iter().enumerate() {
        for (i, &p) in pixels.iter().enumerate() {
            features[(i, j)] = f64::from(p) / 255.0;
        }
    }
    let dataset = LabeledDataset::new(features, labels, class_dirs.len())?;
    Ok(LoadedDataset {
        dataset,
        label_names,
    })
}
