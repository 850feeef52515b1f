import numpy as np
import pytest

from gamutpress.gamut import build_srgb_cusp_table


@pytest.fixture(scope="session")
def cusp_table():
    return build_srgb_cusp_table()


def synth_hdr_corpus(n, rng, height=48, width=64):
    """Mixed synthetic HDR scenes: smooth fields, saturated patches,
    gradients, and wide dynamic ranges."""
    images = []
    for i in range(n):
        kind = i % 5
        if kind == 0:  # smooth random field
            img = rng.rand(height, width, 3) ** 2 * rng.uniform(0.5, 50)
        elif kind == 1:  # gradient with a saturated block
            ramp = np.linspace(0.01, rng.uniform(2, 200), width)
            img = np.repeat(ramp[None, :, None], height, axis=0) * rng.uniform(0.2, 1.0, 3)
            img[: height // 3, : width // 3] = rng.uniform(0.5, 5) * np.array([1.0, 0.02, 0.02])
        elif kind == 2:  # near-primary patches on a dim floor
            img = np.full((height, width, 3), 0.05)
            prim = np.eye(3)[rng.randint(0, 3)]
            img[height // 4 : -height // 4, width // 4 : -width // 4] = prim * rng.uniform(1, 80)
        elif kind == 3:  # high dynamic range speckle
            img = np.exp(rng.randn(height, width, 3) * 2.0)
        else:  # gray with colored noise
            img = np.full((height, width, 3), rng.uniform(0.1, 2.0))
            img += np.abs(rng.randn(height, width, 3)) * 0.3
        images.append(np.ascontiguousarray(img))
    return images
