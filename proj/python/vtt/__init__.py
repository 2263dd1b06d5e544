"""Visual type theory: compile glyph registries, compose and render glyphs."""

from ._vtt import (
    Registry,
    Service,
    VttError,
    abbreviate,
    apply_derivation,
    canonical_id,
    combine,
    compile,
    constraints,
    denote,
    density,
    emit_tex,
    enumerate,
    equivalent,
    expand,
    expand_region,
    family_size,
    format_source,
    invert,
    is_irregular,
    load_json,
    lookup,
    place_mark,
    refines,
    render_expression,
    render_svg,
    resolve,
    validate,
)


def compile_file(path, lenient=False):
    with open(path, encoding="utf-8") as f:
        return compile(f.read(), str(path), lenient)


__all__ = [name for name in dir() if not name.startswith("_")]
