"""Color image and video denoising with green-guided grouping and a nonlocal tensor transform.

Images are float arrays of shape (H, W, 3) on the [0, 255] scale.
"""

from ._gcpid import (
    DenoiseConfig,
    Error,
    add_awgn,
    add_awgn_rgb,
    denoise_image,
    denoise_video,
    psnr,
    ssim,
    success_rate,
    synthetic_image,
    t_product,
    t_svd,
    t_transpose,
    threshold_value,
)

__all__ = [
    "DenoiseConfig",
    "Error",
    "add_awgn",
    "add_awgn_rgb",
    "denoise_image",
    "denoise_video",
    "psnr",
    "ssim",
    "success_rate",
    "synthetic_image",
    "t_product",
    "t_svd",
    "t_transpose",
    "threshold_value",
]

__version__ = "0.1.0"
