use std::path::Path;

use super::SerialError;
use crate::image::RgbImage;

/// Writes an 8-bit RGB PNG.
pub fn export_png(image: &RgbImage, path: impl AsRef<Path>) -> Result<(), SerialError> {
    if image.width == 0 || image.height == 0 {
        return Err(SerialError::EmptyImage);
    }
    image::save_buffer_with_format(
        path,
        &image.data,
        image.width as u32,
        image.height as u32,
        image::ExtendedColorType::Rgb8,
        image::ImageFormat::Png,
    )
    .map_err(|e| match e {
        image::ImageError::IoError(io) => SerialError::Io(io),
        other => SerialError::Png(other.to_string()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decodes_to_same_pixels() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.png");
        let img = RgbImage {
            width: 2,
            height: 2,
            data: vec![0, 1, 2, 3, 4, 5, 250, 251, 252, 9, 8, 7],
        };
        export_png(&img, &path).unwrap();
        let back = image::open(&path).unwrap().to_rgb8();
        assert_eq!(back.dimensions(), (2, 2));
        assert_eq!(back.into_raw(), img.data);
    }

    #[test]
    fn empty_image_rejected() {
        let img = RgbImage {
            width: 0,
            height: 0,
            data: vec![],
        };
        assert!(matches!(export_png(&img, "/nonexistent/x.png"), Err(SerialError::EmptyImage)));
    }
}
