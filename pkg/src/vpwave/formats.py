"""Signal CSV, 8-bit grayscale PGM/PNG and the VPWC pyramid container.

VPWC layout, all integers and floats little-endian::

    magic       4s   b"VPWC"
    version     u32  1
    dims        u8   1 or 2
    theta       f64
    levels      u32
    orig_dims   dims x u64
    per level, finest first:
        per axis    u8 pad_count, u8 normalized flag
        pad_mode    u8 (0 replicate, 1 zeros)
        f_sca       f64
        f_wav       f64
        n_bands     u8 (1 for 1D, 3 for 2D: H, V, D)
        shapes      n_bands x dims x u64
    coarse shape  dims x u64
    payload     f64 row-major: each level's bands finest first, coarse last
"""

from __future__ import annotations

import io
import struct
from pathlib import Path

import numpy as np

from .mra1d import PAD_MODES, LevelMeta, Pyramid1D
from .mra2d import LevelMeta2D, Pyramid2D

__all__ = [
    "FormatError",
    "read_signal_csv",
    "write_signal_csv",
    "read_pgm",
    "write_pgm",
    "read_png",
    "write_png",
    "read_image",
    "write_image",
    "encode_vpc",
    "decode_vpc",
    "read_vpc",
    "write_vpc",
]

MAGIC = b"VPWC"
VERSION = 1


class FormatError(ValueError):
    """Malformed input file; ``offset`` is the byte position of the problem."""

    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at byte {offset})"
        super().__init__(message)


# -- CSV ---------------------------------------------------------------------


def write_signal_csv(path, values) -> None:
    values = np.asarray(values, dtype=float).ravel()
    with open(path, "w", newline="\n") as fh:
        fh.writelines(f"{v!r}\n" for v in values.tolist())


def read_signal_csv(path) -> np.ndarray:
    data = Path(path).read_bytes()
    out = []
    offset = 0
    for line in data.split(b"\n"):
        text = line.strip()
        if text and not text.startswith(b"#"):
            try:
                out.append(float(text.split(b",")[0]))
            except ValueError:
                raise FormatError(f"not a number: {text[:40]!r}", offset) from None
        offset += len(line) + 1
    if not out:
        raise FormatError("no samples in signal file", 0)
    return np.array(out)


# -- PGM ---------------------------------------------------------------------


def _to_uint8(img):
    img = np.asarray(img)
    if img.ndim != 2:
        raise ValueError(f"expected a 2D grayscale image, got shape {img.shape}")
    if img.dtype != np.uint8:
        img = np.clip(np.rint(np.asarray(img, dtype=float)), 0, 255).astype(np.uint8)
    return img


def write_pgm(path, img) -> None:
    """Binary P5 with maxval 255; float input is rounded and clipped."""
    img = _to_uint8(img)
    h, w = img.shape
    with open(path, "wb") as fh:
        fh.write(f"P5\n{w} {h}\n255\n".encode("ascii"))
        fh.write(img.tobytes())


def _pgm_tokens(data, count, start):
    """Read ``count`` whitespace-separated header tokens, skipping comments."""
    tokens = []
    pos = start
    while len(tokens) < count:
        while pos < len(data) and (chr(data[pos]).isspace() or data[pos] == ord("#")):
            if data[pos] == ord("#"):
                while pos < len(data) and data[pos] not in b"\r\n":
                    pos += 1
            else:
                pos += 1
        if pos >= len(data):
            raise FormatError("truncated PGM header", pos)
        begin = pos
        while pos < len(data) and not chr(data[pos]).isspace():
            pos += 1
        tok = data[begin:pos]
        if not tok.isdigit():
            raise FormatError(f"bad PGM header token {tok[:20]!r}", begin)
        tokens.append(int(tok))
    # exactly one whitespace byte precedes the raster
    return tokens, pos + 1


def read_pgm(path) -> np.ndarray:
    data = Path(path).read_bytes()
    if data[:2] != b"P5":
        raise FormatError("not a binary PGM (missing P5 magic)", 0)
    (w, h, maxval), pos = _pgm_tokens(data, 3, 2)
    if not 0 < maxval < 256:
        raise FormatError(f"only 8-bit PGM supported, maxval={maxval}", pos - 1)
    need = w * h
    if len(data) - pos < need:
        raise FormatError(f"raster truncated: need {need} bytes, have {len(data) - pos}", len(data))
    return np.frombuffer(data, dtype=np.uint8, count=need, offset=pos).reshape(h, w).copy()


# -- PNG (8-bit grayscale via Pillow) ------------------------------------------


def write_png(path, img) -> None:
    from PIL import Image

    Image.fromarray(_to_uint8(img), mode="L").save(path, format="PNG")


def read_png(path) -> np.ndarray:
    from PIL import Image, UnidentifiedImageError

    try:
        with Image.open(path) as im:
            if im.format != "PNG":
                raise FormatError(f"not a PNG file ({im.format})", 0)
            if im.mode != "L":
                raise FormatError(f"only 8-bit grayscale PNG supported, got mode {im.mode}", 0)
            return np.asarray(im, dtype=np.uint8).copy()
    except UnidentifiedImageError as exc:
        raise FormatError(f"unreadable PNG: {exc}", 0) from None


def read_image(path) -> np.ndarray:
    suffix = Path(path).suffix.lower()
    if suffix == ".png":
        return read_png(path)
    if suffix in (".pgm", ".pnm"):
        return read_pgm(path)
    raise ValueError(f"unsupported image extension {suffix!r} (use .pgm or .png)")


def write_image(path, img) -> None:
    suffix = Path(path).suffix.lower()
    if suffix == ".png":
        write_png(path, img)
    elif suffix in (".pgm", ".pnm"):
        write_pgm(path, img)
    else:
        raise ValueError(f"unsupported image extension {suffix!r} (use .pgm or .png)")


# -- VPWC container ------------------------------------------------------------


class _Reader:
    def __init__(self, data):
        self.data = data
        self.pos = 0

    def take(self, fmt):
        size = struct.calcsize(fmt)
        if self.pos + size > len(self.data):
            raise FormatError(f"truncated container: need {size} bytes", self.pos)
        vals = struct.unpack_from(fmt, self.data, self.pos)
        self.pos += size
        return vals if len(vals) > 1 else vals[0]


def encode_vpc(p) -> bytes:
    if isinstance(p, Pyramid1D):
        dims = 1
        orig = (p.original_length,)
        level_bands = [[np.asarray(d, dtype="<f8")] for d in p.details]
        metas = [((m.pad_count,), m.pad_mode, m.f_sca, m.f_wav) for m in p.level_meta]
    elif isinstance(p, Pyramid2D):
        dims = 2
        orig = tuple(p.original_dims)
        level_bands = [[np.asarray(b, dtype="<f8") for b in trip] for trip in p.levels]
        metas = [((m.pad_rows, m.pad_cols), m.pad_mode, m.f_sca, m.f_wav) for m in p.level_meta]
    else:
        raise TypeError(f"cannot encode {type(p).__name__}")
    coarse = np.asarray(p.coarse, dtype="<f8")
    for bands in level_bands + [[coarse]]:
        for b in bands:
            if b.ndim != dims:
                raise ValueError(f"band of shape {b.shape} does not match dims={dims}")

    buf = io.BytesIO()
    buf.write(MAGIC)
    buf.write(struct.pack("<IBdI", VERSION, dims, float(p.theta), len(level_bands)))
    buf.write(struct.pack(f"<{dims}Q", *orig))
    for bands, (pads, mode, f_sca, f_wav) in zip(level_bands, metas):
        normalized = int(not (f_sca == 1.0 and f_wav == 1.0))
        for pad in pads:
            buf.write(struct.pack("<BB", pad, normalized))
        buf.write(struct.pack("<Bdd", PAD_MODES.index(mode), f_sca, f_wav))
        buf.write(struct.pack("<B", len(bands)))
        for b in bands:
            buf.write(struct.pack(f"<{dims}Q", *b.shape))
    buf.write(struct.pack(f"<{dims}Q", *coarse.shape))
    for bands in level_bands:
        for b in bands:
            buf.write(np.ascontiguousarray(b).tobytes())
    buf.write(np.ascontiguousarray(coarse).tobytes())
    return buf.getvalue()


def decode_vpc(data: bytes):
    r = _Reader(data)
    magic = r.take("<4s")
    if magic != MAGIC:
        raise FormatError(f"bad magic {magic!r}", 0)
    version = r.take("<I")
    if version != VERSION:
        raise FormatError(f"unsupported version {version}", 4)
    dims_at = r.pos
    dims = r.take("<B")
    if dims not in (1, 2):
        raise FormatError(f"dims must be 1 or 2, got {dims}", dims_at)
    theta = r.take("<d")
    levels = r.take("<I")
    orig = r.take(f"<{dims}Q")
    orig = (orig,) if dims == 1 else tuple(orig)

    metas, shapes = [], []
    for _ in range(levels):
        pads = []
        for _ in range(dims):
            pad, _normalized = r.take("<BB")
            pads.append(pad)
        mode_at = r.pos
        mode, f_sca, f_wav = r.take("<Bdd")
        if mode >= len(PAD_MODES):
            raise FormatError(f"unknown pad mode byte {mode}", mode_at)
        nb_at = r.pos
        n_bands = r.take("<B")
        if n_bands != (1 if dims == 1 else 3):
            raise FormatError(f"level has {n_bands} bands, expected {1 if dims == 1 else 3}", nb_at)
        level_shapes = []
        for _ in range(n_bands):
            s = r.take(f"<{dims}Q")
            level_shapes.append((s,) if dims == 1 else tuple(s))
        shapes.append(level_shapes)
        metas.append((pads, PAD_MODES[mode], f_sca, f_wav))
    cs = r.take(f"<{dims}Q")
    coarse_shape = (cs,) if dims == 1 else tuple(cs)

    def band(shape):
        count = int(np.prod(shape))
        if r.pos + 8 * count > len(data):
            raise FormatError(f"payload truncated: band {shape} needs {8 * count} bytes", r.pos)
        arr = np.frombuffer(data, dtype="<f8", count=count, offset=r.pos).reshape(shape).astype(float)
        r.pos += 8 * count
        return arr

    level_bands = [[band(s) for s in level_shapes] for level_shapes in shapes]
    coarse = band(coarse_shape)
    if r.pos != len(data):
        raise FormatError(f"{len(data) - r.pos} trailing bytes after payload", r.pos)

    if dims == 1:
        meta = [LevelMeta(pads[0], mode, fs, fw) for pads, mode, fs, fw in metas]
        return Pyramid1D([b[0] for b in level_bands], coarse, theta, meta, orig[0])
    meta = [LevelMeta2D(pads[0], pads[1], mode, fs, fw) for pads, mode, fs, fw in metas]
    return Pyramid2D([tuple(b) for b in level_bands], coarse, theta, meta, orig)


def write_vpc(path, p) -> None:
    Path(path).write_bytes(encode_vpc(p))


def read_vpc(path):
    return decode_vpc(Path(path).read_bytes())
