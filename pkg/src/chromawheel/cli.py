"""Command line interface: build-model, analyze, serve."""

from __future__ import annotations

import sys
from pathlib import Path

import click

from . import default_model_path
from .knowledge import build_model
from .model import ColorModel
from .report import (
    analyze_full,
    export_masks,
    load_image_rgb,
    report_to_json,
    report_to_text,
)


@click.group()
def cli():
    """Color classification, naming, and segmentation in polar AB space."""


def _load_model(model_path: str | None) -> tuple[ColorModel, str]:
    path = Path(model_path) if model_path else default_model_path()
    return ColorModel.load(path), str(path)


@cli.command("build-model")
@click.argument("wheel", type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--output", required=True, type=click.Path(dir_okay=False))
@click.option("--bin-size", default=1.0, show_default=True)
def cmd_build_model(wheel: str, output: str, bin_size: float):
    """Derive a color model from a reference wheel image."""
    try:
        image = load_image_rgb(wheel)
        model = build_model(image, bin_size=bin_size)
    except Exception as exc:
        raise click.ClickException(str(exc)) from exc
    model.save(output)
    click.echo(f"model written to {output}")
    click.echo("\nchromogen bases:")
    for base in model.bases:
        click.echo(f"  {base.angle:8.3f}  {base.category.display_name}")
    click.echo("\nboundaries (deg): " + ", ".join(f"{b:.3f}" for b in model.boundaries))
    click.echo(
        f"radii: r1={model.r1:.3f}  r2'={model.r2_prime:.3f}  "
        f"r2={model.r2:.3f}  r3={model.r3:.3f}"
    )


@cli.command("analyze")
@click.argument("image", type=click.Path(exists=True, dir_okay=False))
@click.option("-m", "--model", "model_path", type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--out-dir", default=".", type=click.Path(file_okay=False))
@click.option("--masks/--no-masks", default=False, show_default=True)
@click.option(
    "--format", "fmt", type=click.Choice(["json", "text"]), default="json",
    show_default=True,
)
def cmd_analyze(image: str, model_path: str | None, out_dir: str, masks: bool, fmt: str):
    """Classify an image and write its color analysis report."""
    try:
        model, model_ref = _load_model(model_path)
        pixels = load_image_rgb(image)
        report, labels, mask_arrays = analyze_full(
            pixels, model, source=image, model_ref=model_ref
        )
    except Exception as exc:
        raise click.ClickException(str(exc)) from exc
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = Path(image).stem
    if masks:
        report["masks"] = export_masks(labels, mask_arrays, stem, out)
    if fmt == "json":
        report_path = out / f"{stem}_report.json"
        report_path.write_text(report_to_json(report), encoding="utf-8")
    else:
        report_path = out / f"{stem}_report.txt"
        report_path.write_text(report_to_text(report), encoding="utf-8")
    click.echo(f"report written to {report_path}")
    top = max(report["categories"], key=lambda row: row["count"])
    click.echo(
        f"dominant category: {top['category']} ({top['percentage']:.2f}%), "
        f"analysis took {report['duration_ms']:.1f} ms"
    )


@cli.command("serve")
@click.option("-p", "--port", default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("-m", "--model", "model_path", type=click.Path(exists=True, dir_okay=False))
def cmd_serve(port: int, host: str, model_path: str | None):
    """Serve the HTTP analysis API and the boundary-tuning UI."""
    import uvicorn

    from .service import create_app

    try:
        model, model_ref = _load_model(model_path)
    except Exception as exc:
        raise click.ClickException(str(exc)) from exc
    app = create_app(model, model_ref=model_ref)
    try:
        uvicorn.run(app, host=host, port=port, log_level="info")
    except SystemExit as exc:  # port in use and similar startup failures
        sys.exit(exc.code or 1)


def main():
    cli()


if __name__ == "__main__":
    main()
