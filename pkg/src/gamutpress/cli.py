"""Command-line front end for the whole pipeline."""

import sys
from pathlib import Path

import click
import numpy as np

from . import backend, bench as bench_mod, dataset, pcomp as pcomp_mod
from .color import srgb_transfer
from .gamut import build_srgb_cusp_table
from .hdr_io import encode_sdr_png, read_hdr
from .tmo import TMO_IDS, TmoSpec, apply_tmo


def _fail(message):
    click.echo(f"error: {message}", err=True)
    sys.exit(1)


def _parse_params(pairs):
    params = {}
    for pair in pairs:
        if "=" not in pair:
            raise click.UsageError(f"--param expects k=v, got {pair!r}")
        key, value = pair.split("=", 1)
        try:
            params[key] = float(value)
        except ValueError:
            raise click.UsageError(f"--param value must be numeric, got {pair!r}") from None
    return params


@click.group()
def main():
    """Tone mapping, chroma compression and evaluation tools."""


@main.command()
@click.option("--in", "in_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
@click.option("--tmo", "tmo_id", required=True, type=click.Choice(TMO_IDS))
@click.option("--param", "params", multiple=True, help="Operator parameter, k=v; repeatable.")
def tonemap(in_path, out_path, tmo_id, params):
    """Tone map an HDR file (RGBE/PFM) to an 8-bit PNG."""
    try:
        hdr = read_hdr(in_path)
        sdr = apply_tmo(hdr, TmoSpec(tmo_id, _parse_params(params)))
        encoded = srgb_transfer(np.clip(sdr, 0.0, 1.0), "encode")
        Path(out_path).write_bytes(encode_sdr_png(encoded))
    except click.UsageError:
        raise
    except Exception as exc:
        _fail(f"{in_path}: {exc}")


@main.command()
@click.option("--in", "in_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
@click.option("--bins", default=360, show_default=True, help="Hue bins in the cusp table.")
@click.option("--sigma-s", type=float, default=None, help="Spatial sigma in px (default: scaled to resolution).")
@click.option("--sigma-r", type=float, default=10.0, show_default=True, help="Range sigma in chroma units.")
def compress(in_path, out_path, bins, sigma_s, sigma_r):
    """Chroma-compress a stored tone-mapped PNG into the sRGB gamut."""
    try:
        table = build_srgb_cusp_table(bins=bins)
        png = dataset.compress_stored_sdr(
            Path(in_path).read_bytes(), table, sigma_s=sigma_s, sigma_r=sigma_r
        )
        Path(out_path).write_bytes(png)
    except Exception as exc:
        _fail(f"{in_path}: {exc}")


@main.command(name="pair-gen")
@click.option("--corpus", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--tmos", default=",".join(TMO_IDS), show_default=True, help="Comma-separated operator ids.")
@click.option("--seed", default=0, show_default=True, help="Split seed.")
@click.option("--force", is_flag=True, help="Rewrite pairs that already exist.")
@click.option("--workers", default=1, show_default=True, help="Worker pool size.")
def pair_gen(corpus, out_dir, tmos, seed, force, workers):
    """Generate (tone-mapped, chroma-compressed) PNG pairs plus manifests."""
    try:
        specs = [TmoSpec(t.strip()) for t in tmos.split(",") if t.strip()]
        rows = dataset.generate_pairs(corpus, specs, out_dir, seed=seed, force=force, workers=workers)
    except Exception as exc:
        _fail(str(exc))
    written = sum(1 for r in rows if r["written"])
    click.echo(f"{len(rows)} pairs in manifest, {written} newly written")


@main.command()
@click.option("--ref-dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--cand-dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
def metrics(ref_dir, cand_dir, out_path):
    """Per-pair metric CSV (psnr, ssim, mae_h, delta_e, hue_loss) + mean row."""
    try:
        rows, mean_row, missing = dataset.evaluate_corpus(ref_dir, cand_dir)
    except Exception as exc:
        _fail(str(exc))
    lines = ["path,psnr,ssim,mae_h,delta_e,hue_loss"]
    for row in rows + ([mean_row] if mean_row else []):
        lines.append(
            f"{row['path']},{row['psnr']:.6f},{row['ssim']:.6f},"
            f"{row['mae_h']:.6f},{row['delta_e']:.6f},{row['hue_loss']:.6f}"
        )
    Path(out_path).write_text("\n".join(lines) + "\n")
    for name in missing:
        click.echo(f"excluded (no counterpart): {name}", err=True)
    click.echo(f"{len(rows)} pairs evaluated -> {out_path}")


@main.command(name="bench")
@click.option("--image", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--resolutions", default="0.26,1,2,4,9.4", show_default=True, help="MPixel ladder.")
@click.option("--reps", default=10, show_default=True)
@click.option("--threads", default=1, show_default=True)
@click.option(
    "--engine",
    default="auto",
    show_default=True,
    type=click.Choice(["auto", "numba", "numpy", "both"]),
    help="Kernel backend to time; 'both' compares numba against the numpy fallback.",
)
@click.option("--out", "out_path", default=None, type=click.Path(dir_okay=False), help="Optional CSV output.")
def bench(image, resolutions, reps, threads, engine, out_path):
    """Time the compression path over a resolution ladder."""
    try:
        img = read_hdr(image)
        ladder = [float(r) for r in resolutions.split(",") if r.strip()]
        engines = ("numba", "numpy") if engine == "both" else (engine,)
        backend.use_backend(engines[0])
        bench_mod.set_threads(threads)
        points = bench_mod.run_bench(img, resolutions=ladder, reps=reps, engines=engines)
    except Exception as exc:
        _fail(f"{image}: {exc}")
    click.echo(bench_mod.format_table(points), nl=False)
    if out_path:
        Path(out_path).write_text(bench_mod.to_csv(points))


@main.group()
def study():
    """2AFC study server."""


@study.command()
@click.option("--config", "config_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--port", default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--log", "log_path", default=None, type=click.Path(dir_okay=False), help="Vote log (JSONL).")
def serve(config_path, port, host, log_path):
    """Serve the study API (and the UI bundle when configured)."""
    import uvicorn

    from .study import create_app, load_config

    try:
        config = load_config(config_path)
        if log_path is None:
            log_path = str(Path(config_path).parent / "votes.jsonl")
        app = create_app(config, log_path)
    except Exception as exc:
        _fail(f"{config_path}: {exc}")
    uvicorn.run(app, host=host, port=port)


@main.group()
def pcomp():
    """Paired-comparison analysis."""


@pcomp.command()
@click.option("--votes", "votes_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--R", "critical_range", default=90.0, show_default=True, help="Critical score range.")
@click.option("--out", "out_path", default=None, type=click.Path(dir_okay=False), help="Optional CSV output.")
def analyze(votes_path, critical_range, out_path):
    """Consistency, agreement, significance and grouping from a vote CSV."""
    try:
        rows = pcomp_mod.read_votes_csv(Path(votes_path).read_text())
        result = pcomp_mod.analyze(rows, critical_range=critical_range)
    except Exception as exc:
        _fail(f"{votes_path}: {exc}")
    click.echo(pcomp_mod.report_text(result), nl=False)
    if out_path:
        Path(out_path).write_text(pcomp_mod.report_csv(result))


@main.command()
@click.option("--bins", default=360, show_default=True)
@click.option("--samples", default=1024, show_default=True, help="Samples per cube edge.")
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
def cusp(bins, samples, out_path):
    """Dump the display cusp table as CSV (bin, L_cusp, C_cusp)."""
    try:
        table = build_srgb_cusp_table(bins=bins, edge_samples=samples)
        Path(out_path).write_text(table.to_csv())
    except Exception as exc:
        _fail(str(exc))


if __name__ == "__main__":
    main()
