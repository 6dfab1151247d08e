use std::path::Path;

use super::ControllerError;
use crate::image::ComplexField;

/// Rec. 601 luma of an 8-bit RGB pixel, rounded.
pub fn rec601_luma(r: u8, g: u8, b: u8) -> u8 {
    (0.299 * r as f64 + 0.587 * g as f64 + 0.114 * b as f64).round().clamp(0.0, 255.0) as u8
}

/// Nearest-neighbour resample of a row-major 8-bit grid; each destination
/// pixel takes the source pixel under its centre.
pub fn resample_nearest(src: &[u8], sw: usize, sh: usize, dw: usize, dh: usize) -> Vec<u8> {
    assert_eq!(src.len(), sw * sh);
    if (sw, sh) == (dw, dh) {
        return src.to_vec();
    }
    let map = |d: usize, dn: usize, sn: usize| (((2 * d + 1) * sn) / (2 * dn)).min(sn - 1);
    let mut out = Vec::with_capacity(dw * dh);
    for y in 0..dh {
        let sy = map(y, dh, sh);
        for x in 0..dw {
            out.push(src[sy * sw + map(x, dw, sw)]);
        }
    }
    out
}

/// Decodes an image file into 8-bit luminance. Colour images are converted
/// with Rec. 601 weights; alpha is ignored.
pub fn load_grayscale(path: &Path) -> Result<(usize, usize, Vec<u8>), ControllerError> {
    let err = |message: String| ControllerError::ImageLoad {
        path: path.display().to_string(),
        message,
    };
    let img = image::ImageReader::open(path)
        .map_err(|e| err(e.to_string()))?
        .with_guessed_format()
        .map_err(|e| err(e.to_string()))?
        .decode()
        .map_err(|e| err(e.to_string()))?;
    let (w, h) = (img.width() as usize, img.height() as usize);
    if w == 0 || h == 0 {
        return Err(err("image has no pixels".into()));
    }
    let luma = if img.color().has_color() {
        img.to_rgb8().pixels().map(|p| rec601_luma(p[0], p[1], p[2])).collect()
    } else {
        img.to_luma8().into_raw()
    };
    Ok((w, h, luma))
}

fn load_resampled(path: &Path, width: usize, height: usize) -> Result<ComplexField, ControllerError> {
    let (w, h, px) = load_grayscale(path)?;
    if (w, h) != (width, height) {
        log::info!("resampling {} from {w}x{h} to {width}x{height}", path.display());
    }
    let px = resample_nearest(&px, w, h, width, height);
    ComplexField::from_grayscale(width, height, &px).map_err(|e| ControllerError::ImageLoad {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Target amplitude `v / 255`, resampled to `width` x `height`.
pub fn load_target(path: &Path, width: usize, height: usize) -> Result<ComplexField, ControllerError> {
    load_resampled(path, width, height)
}

/// Illumination amplitude `v / 255`, resampled to the SLM grid.
pub fn load_illumination(path: &Path, width: usize, height: usize) -> Result<ComplexField, ControllerError> {
    load_resampled(path, width, height)
}
