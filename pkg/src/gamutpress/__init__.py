"""gamutpress: tone mapping, cusp-based chroma compression and exact gamut
clipping for HDR images, with the evaluation stack around them."""

from .backend import available_backends, backend_name, use_backend
from .color import lch_to_rgb, luminance, rgb_to_lab, rgb_to_lch, srgb_transfer
from .compress import (
    BaseDetail,
    ImageCusps,
    base_detail_split,
    clip_to_gamut,
    compress_chroma,
    image_hue_cusps,
)
from .dataset import SplitManifest, evaluate_corpus, generate_pairs, split_scenes
from .gamut import CuspTable, build_srgb_cusp_table, cusp_max_chroma, in_gamut
from .hdr_io import decode_hdr, decode_sdr_png, encode_pfm, encode_sdr_png
from .metrics import MetricsReport, delta_e_lab, hue_loss_l2, mae_hue, psnr, ssim
from .pcomp import (
    ObserverBallot,
    VoteMatrix,
    agreement_coefficient,
    consistency_coefficient,
    rank_and_group,
    significance_tests,
    tally_votes,
)
from .tmo import TmoSpec, apply_tmo, log_average

__version__ = "0.1.0"

__all__ = [
    "available_backends",
    "backend_name",
    "use_backend",
    "luminance",
    "srgb_transfer",
    "rgb_to_lch",
    "lch_to_rgb",
    "rgb_to_lab",
    "TmoSpec",
    "apply_tmo",
    "log_average",
    "CuspTable",
    "build_srgb_cusp_table",
    "cusp_max_chroma",
    "in_gamut",
    "ImageCusps",
    "BaseDetail",
    "image_hue_cusps",
    "base_detail_split",
    "compress_chroma",
    "clip_to_gamut",
    "MetricsReport",
    "psnr",
    "ssim",
    "mae_hue",
    "delta_e_lab",
    "hue_loss_l2",
    "SplitManifest",
    "split_scenes",
    "generate_pairs",
    "evaluate_corpus",
    "ObserverBallot",
    "VoteMatrix",
    "tally_votes",
    "consistency_coefficient",
    "agreement_coefficient",
    "significance_tests",
    "rank_and_group",
    "decode_hdr",
    "encode_pfm",
    "encode_sdr_png",
    "decode_sdr_png",
    "__version__",
]
