"""Dataset generation: paired tone-mapped / chroma-compressed images.

Scene identity is the filename stem before the first underscore, so every
tone-mapped variant of a scene lands in the same split subset. Pair
generation is deterministic and resumable: rerunning into the same tree
rewrites nothing unless forced.
"""

import concurrent.futures
import csv
import io
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .color import srgb_transfer
from .compress import compress_chroma
from .gamut import build_srgb_cusp_table
from .hdr_io import HdrDecodeError, decode_sdr_png, encode_sdr_png, read_hdr
from .metrics import delta_e_lab, hue_loss_l2, mae_hue, psnr, ssim
from .tmo import TmoSpec, apply_tmo

log = logging.getLogger(__name__)

HDR_SUFFIXES = (".hdr", ".pic", ".pfm")
SUBSETS = ("train", "val", "test")


@dataclass(frozen=True)
class SceneEntry:
    scene_id: str
    path: Path


@dataclass(frozen=True)
class SplitManifest:
    seed: int
    assignments: dict

    def counts(self):
        return {s: sum(1 for v in self.assignments.values() if v == s) for s in SUBSETS}

    def to_csv(self):
        out = io.StringIO()
        out.write(f"# seed={self.seed}\n")
        out.write("scene_id,subset\n")
        for scene_id in sorted(self.assignments):
            out.write(f"{scene_id},{self.assignments[scene_id]}\n")
        return out.getvalue()


def scene_id_of(path):
    return Path(path).stem.split("_")[0]


def scan_corpus(corpus_dir):
    corpus_dir = Path(corpus_dir)
    entries = []
    seen = {}
    for path in sorted(corpus_dir.iterdir()):
        if path.suffix.lower() not in HDR_SUFFIXES:
            continue
        sid = scene_id_of(path)
        if sid in seen:
            raise ValueError(f"duplicate scene id {sid!r}: {seen[sid]} and {path}")
        seen[sid] = path
        entries.append(SceneEntry(scene_id=sid, path=path))
    return entries


def _round_half_up(x):
    return int(np.floor(x + 0.5))


def split_scenes(scene_ids, seed):
    """Deterministic seeded 8:1:1 split; same (corpus, seed) -> same manifest."""
    scene_ids = sorted(scene_ids)
    n = len(scene_ids)
    if n < 10:
        raise ValueError(f"need at least 10 scenes for an 8:1:1 split, got {n}")
    order = np.random.RandomState(seed).permutation(n)
    shuffled = [scene_ids[i] for i in order]
    cut1 = _round_half_up(0.8 * n)
    cut2 = _round_half_up(0.9 * n)
    assignments = {}
    for i, sid in enumerate(shuffled):
        assignments[sid] = "train" if i < cut1 else ("val" if i < cut2 else "test")
    return SplitManifest(seed=seed, assignments=assignments)


def _store_sdr(sdr):
    """Clamp, gamma-encode and quantize a linear SDR raster to PNG bytes."""
    return encode_sdr_png(srgb_transfer(np.clip(sdr, 0.0, 1.0), "encode"))


def _load_sdr(png_bytes):
    """PNG bytes back to the linear SDR raster the pipeline operates on."""
    return srgb_transfer(decode_sdr_png(png_bytes), "decode")


def compress_stored_sdr(png_bytes, table, **kwargs):
    """Chroma-compress a stored tone-mapped PNG; returns PNG bytes.

    This is the exact transform pair generation applies when producing the
    *_cc.png target from the *_in.png bytes, so running it again on a
    stored input reproduces the stored target byte for byte.
    """
    return _store_sdr(compress_chroma(_load_sdr(png_bytes), table, **kwargs))


def _generate_one(entry, spec, out_dir, table, force):
    in_path = out_dir / f"{entry.scene_id}_{spec.id}_in.png"
    cc_path = out_dir / f"{entry.scene_id}_{spec.id}_cc.png"
    if in_path.exists() and cc_path.exists() and not force:
        return in_path, cc_path, False
    hdr = read_hdr(entry.path)
    in_bytes = _store_sdr(apply_tmo(hdr, spec))
    in_path.write_bytes(in_bytes)
    cc_path.write_bytes(compress_stored_sdr(in_bytes, table))
    return in_path, cc_path, True


def generate_pairs(corpus_dir, tmos, out_dir, seed=0, force=False, workers=1, table=None):
    """Write {scene}_{tmo}_in.png / _cc.png pairs plus manifest and split CSVs.

    Unreadable corpus files are logged and skipped. Returns the manifest
    rows as a list of dicts.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    entries = scan_corpus(corpus_dir)
    if table is None:
        table = build_srgb_cusp_table()

    subsets = {}
    split = None
    if len(entries) >= 10:
        split = split_scenes([e.scene_id for e in entries], seed)
        subsets = split.assignments

    specs = [spec if isinstance(spec, TmoSpec) else TmoSpec(spec) for spec in tmos]
    tasks = [(entry, spec) for entry in entries for spec in specs]
    rows = []

    def run(task):
        entry, spec = task
        try:
            in_path, cc_path, written = _generate_one(entry, spec, out_dir, table, force)
        except (HdrDecodeError, ValueError, OSError) as exc:
            log.warning("skipping %s (%s): %s", entry.path, spec.id, exc)
            return None
        return {
            "scene_id": entry.scene_id,
            "tmo": spec.id,
            "subset": subsets.get(entry.scene_id, "na"),
            "in_path": str(in_path),
            "cc_path": str(cc_path),
            "written": written,
        }

    if workers > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, tasks))
    else:
        results = [run(t) for t in tasks]
    rows = [r for r in results if r is not None]
    rows.sort(key=lambda r: (r["scene_id"], r["tmo"]))

    with open(out_dir / "manifest.csv", "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=["scene_id", "tmo", "subset", "in_path", "cc_path"])
        writer.writeheader()
        for row in rows:
            record = {k: row[k] for k in writer.fieldnames}
            # paths relative to the manifest keep reruns byte-identical
            record["in_path"] = Path(row["in_path"]).name
            record["cc_path"] = Path(row["cc_path"]).name
            writer.writerow(record)
    if split is not None:
        (out_dir / "split.csv").write_text(split.to_csv())
    return rows


def evaluate_corpus(ref_dir, cand_dir):
    """Metric rows for every PNG name present in both directories.

    psnr/ssim run on the stored [0,1] values; the hue and Lab metrics run
    on the sRGB-decoded linear rasters. Returns (rows, mean_row, missing)
    where missing lists names without a counterpart.
    """
    ref_dir = Path(ref_dir)
    cand_dir = Path(cand_dir)
    ref_names = {p.name for p in ref_dir.glob("*.png")}
    cand_names = {p.name for p in cand_dir.glob("*.png")}
    common = sorted(ref_names & cand_names)
    missing = sorted(ref_names ^ cand_names)

    rows = []
    for name in common:
        ref_enc = decode_sdr_png((ref_dir / name).read_bytes())
        cand_enc = decode_sdr_png((cand_dir / name).read_bytes())
        ref_lin = srgb_transfer(ref_enc, "decode")
        cand_lin = srgb_transfer(cand_enc, "decode")
        rows.append(
            {
                "path": name,
                "psnr": psnr(ref_enc, cand_enc),
                "ssim": ssim(ref_enc, cand_enc),
                "mae_h": mae_hue(ref_lin, cand_lin),
                "delta_e": delta_e_lab(ref_lin, cand_lin),
                "hue_loss": hue_loss_l2(ref_lin, cand_lin),
            }
        )
    mean_row = None
    if rows:
        mean_row = {"path": "mean"}
        for key in ("psnr", "ssim", "mae_h", "delta_e", "hue_loss"):
            mean_row[key] = float(np.mean([r[key] for r in rows]))
    return rows, mean_row, missing
