"""File I/O: Radiance RGBE and PFM decoding, 8-bit PNG encode/decode.

RGBE ingest is read-only (the corpus is input data); PFM has both
directions so synthetic rasters can round-trip exactly. PNG stores the
values it is given: gamma companding is the color module's job, these
functions only quantize/dequantize.
"""

import io
import struct

import numpy as np
from PIL import Image


class HdrDecodeError(ValueError):
    """Malformed HDR stream; carries the byte offset of the problem."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def _check_raster(data, offset=0):
    if not np.isfinite(data).all():
        raise HdrDecodeError("non-finite sample in decoded raster", offset)
    if (data < 0).any():
        raise HdrDecodeError("negative sample in decoded raster", offset)
    return data


# ---------------------------------------------------------------------------
# Radiance RGBE


def _read_line(buf, pos):
    end = buf.find(b"\n", pos)
    if end < 0:
        raise HdrDecodeError("truncated header line", pos)
    return buf[pos:end], end + 1


def _rgbe_to_float(quads):
    """Shared-exponent decode: v = (mantissa/256) * 2^(E-136); E=0 is black."""
    mant = quads[..., :3].astype(np.float64) / 256.0
    exp = quads[..., 3].astype(np.int64)
    scale = np.ldexp(1.0, exp - 136)
    out = mant * scale[..., None]
    out[exp == 0] = 0.0
    return out


def decode_rgbe(data):
    buf = bytes(data)
    line, pos = _read_line(buf, 0)
    if line not in (b"#?RADIANCE", b"#?RGBE"):
        raise HdrDecodeError(f"unknown magic {line[:16]!r}", 0)
    # Header: variable lines until a blank one, then the resolution line.
    while True:
        line, pos = _read_line(buf, pos)
        if line == b"":
            break
    dim_offset = pos
    line, pos = _read_line(buf, pos)
    parts = line.split()
    if len(parts) != 4 or parts[0] != b"-Y" or parts[2] != b"+X":
        raise HdrDecodeError(f"malformed dimension line {line!r}", dim_offset)
    try:
        height = int(parts[1])
        width = int(parts[3])
    except ValueError:
        raise HdrDecodeError(f"malformed dimension line {line!r}", dim_offset) from None
    if width < 1 or height < 1:
        raise HdrDecodeError("non-positive dimensions", dim_offset)

    quads = np.empty((height, width, 4), dtype=np.uint8)
    for y in range(height):
        pos = _decode_rgbe_scanline(buf, pos, quads[y])
    return _check_raster(_rgbe_to_float(quads))


def _decode_rgbe_scanline(buf, pos, row):
    width = row.shape[0]
    if pos + 4 > len(buf):
        raise HdrDecodeError("truncated scanline", pos)
    if 8 <= width <= 32767 and buf[pos] == 2 and buf[pos + 1] == 2:
        scan_width = (buf[pos + 2] << 8) | buf[pos + 3]
        if scan_width == width:
            return _decode_rle_scanline(buf, pos + 4, row)
    return _decode_flat_scanline(buf, pos, row)


def _decode_rle_scanline(buf, pos, row):
    width = row.shape[0]
    for comp in range(4):
        x = 0
        while x < width:
            if pos >= len(buf):
                raise HdrDecodeError("truncated RLE scanline", pos)
            count = buf[pos]
            pos += 1
            if count > 128:
                count -= 128
                if x + count > width:
                    raise HdrDecodeError("RLE run overflows scanline", pos - 1)
                if pos >= len(buf):
                    raise HdrDecodeError("truncated RLE run", pos)
                row[x : x + count, comp] = buf[pos]
                pos += 1
            else:
                if count == 0 or x + count > width:
                    raise HdrDecodeError("RLE run overflows scanline", pos - 1)
                if pos + count > len(buf):
                    raise HdrDecodeError("truncated RLE literals", pos)
                row[x : x + count, comp] = np.frombuffer(buf, np.uint8, count, pos)
                pos += count
            x += count
    return pos


def _decode_flat_scanline(buf, pos, row):
    width = row.shape[0]
    x = 0
    repeat_shift = 0
    while x < width:
        if pos + 4 > len(buf):
            raise HdrDecodeError("truncated scanline", pos)
        r, g, b, e = buf[pos], buf[pos + 1], buf[pos + 2], buf[pos + 3]
        if r == 1 and g == 1 and b == 1 and x > 0:
            # Old-style run: repeat the previous pixel.
            count = e << repeat_shift
            if x + count > width:
                raise HdrDecodeError("RLE run overflows scanline", pos)
            row[x : x + count] = row[x - 1]
            x += count
            repeat_shift += 8
        else:
            row[x] = (r, g, b, e)
            x += 1
            repeat_shift = 0
        pos += 4
    return pos


# ---------------------------------------------------------------------------
# PFM


def _read_token(buf, pos):
    while pos < len(buf) and buf[pos : pos + 1].isspace():
        pos += 1
    start = pos
    while pos < len(buf) and not buf[pos : pos + 1].isspace():
        pos += 1
    if start == pos:
        raise HdrDecodeError("truncated PFM header", start)
    return buf[start:pos], pos


def decode_pfm(data):
    buf = bytes(data)
    magic, pos = _read_token(buf, 0)
    if magic == b"PF":
        channels = 3
    elif magic == b"Pf":
        channels = 1
    else:
        raise HdrDecodeError(f"unknown magic {magic[:16]!r}", 0)
    wtok, pos = _read_token(buf, pos)
    htok, pos = _read_token(buf, pos)
    stok, pos = _read_token(buf, pos)
    try:
        width, height = int(wtok), int(htok)
        scale = float(stok)
    except ValueError:
        raise HdrDecodeError("malformed PFM dimension/scale tokens", pos) from None
    if width < 1 or height < 1:
        raise HdrDecodeError("non-positive dimensions", pos)
    pos += 1  # single whitespace byte terminates the header
    n = width * height * channels
    if pos + 4 * n > len(buf):
        raise HdrDecodeError("truncated PFM pixel data", pos)
    dtype = "<f4" if scale < 0 else ">f4"
    flat = np.frombuffer(buf, dtype, n, pos).astype(np.float64)
    img = flat.reshape(height, width, channels)[::-1]  # rows are bottom-up
    if channels == 1:
        img = np.repeat(img, 3, axis=2)
    return _check_raster(np.ascontiguousarray(img), pos)


def encode_pfm(img):
    """Little-endian color PFM with bottom-up rows; round-trips exactly."""
    img = np.asarray(img, dtype=np.float32)
    if img.ndim != 3 or img.shape[2] != 3 or img.size == 0:
        raise ValueError("expected a non-empty (H, W, 3) raster")
    height, width = img.shape[:2]
    header = f"PF\n{width} {height}\n-1.0\n".encode("ascii")
    return header + img[::-1].tobytes()


# ---------------------------------------------------------------------------
# Front door


def sniff_format(data):
    head = bytes(data[:10])
    if head.startswith(b"#?"):
        return "rgbe"
    if head.startswith(b"PF") or head.startswith(b"Pf"):
        return "pfm"
    raise HdrDecodeError(f"unknown magic {head!r}", 0)


def decode_hdr(data, fmt="auto"):
    """Decode an HDR byte stream into a linear (H, W, 3) float64 raster."""
    if fmt == "auto":
        fmt = sniff_format(data)
    if fmt == "rgbe":
        return decode_rgbe(data)
    if fmt == "pfm":
        return decode_pfm(data)
    raise ValueError(f"unknown format {fmt!r}")


def read_hdr(path):
    with open(path, "rb") as fh:
        return decode_hdr(fh.read())


# ---------------------------------------------------------------------------
# 8-bit PNG


def encode_sdr_png(img):
    """Quantize a [0,1] raster to 8-bit RGB PNG bytes (round half up)."""
    img = np.asarray(img, dtype=np.float64)
    if img.ndim != 3 or img.shape[2] != 3 or img.size == 0:
        raise ValueError("expected a non-empty (H, W, 3) raster")
    q = np.floor(255.0 * img + 0.5)
    q = np.clip(q, 0, 255).astype(np.uint8)
    out = io.BytesIO()
    Image.fromarray(q, mode="RGB").save(out, format="PNG")
    return out.getvalue()


def decode_sdr_png(data):
    """PNG bytes back to a float64 raster in [0,1] (exactly q/255)."""
    img = Image.open(io.BytesIO(data))
    arr = np.asarray(img.convert("RGB"), dtype=np.float64)
    return arr / 255.0


def write_png(path, img):
    with open(path, "wb") as fh:
        fh.write(encode_sdr_png(img))


def read_png(path):
    with open(path, "rb") as fh:
        return decode_sdr_png(fh.read())
