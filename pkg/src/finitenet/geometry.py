"""Convex regions and receiver-to-node distance laws.

A network region is a disk or a strictly convex polygon. For a reference
point y0 in the closed region, the distance R from y0 to a uniformly
distributed node has density f_R(r) = r * theta(r) / |A|, where theta(r) is
the angular measure of directions phi with y0 + r*(cos phi, sin phi) still
inside the region. For polygons theta is computed as 2*pi minus the measure
of the union of per-side "outside" arcs; the CDF comes from exact clipping of
the circle against the region, so pdf and cdf are independent code paths.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError

TWO_PI = 2.0 * math.pi

# relative tolerances (scaled by the region's characteristic length)
CONTAINMENT_RTOL = 1e-12
BREAKPOINT_DEDUP_RTOL = 1e-12
_ZERO_DIST_RTOL = 1e-12      # below this, a side is treated as through y0


@dataclass(frozen=True, eq=False)
class Region:
    """A disk (center, radius) or a strictly convex CCW polygon (vertices)."""
    kind: str
    area: float
    scale: float
    center: np.ndarray = None
    radius: float = 0.0
    vertices: np.ndarray = None


@dataclass(frozen=True, eq=False)
class ReferencePoint:
    """A receiver location, validated to lie in the closed region."""
    xy: np.ndarray


@dataclass(frozen=True, eq=False)
class DistanceProfile:
    """Distance law from a reference point to a uniform node in the region.

    breakpoints: sorted radii where the pdf changes analytic form, ending
        with r_max. pdf/cdf/arc_measure are vectorized callables.
    constant_arc_pieces: (lo, hi, theta) intervals on which the inside-arc
        measure is constant, i.e. where f_R(r) = theta * r / area exactly;
        closed-form expectation formulas apply on these pieces.
    """
    r_max: float
    breakpoints: tuple
    area: float
    pdf: object
    cdf: object
    arc_measure: object
    constant_arc_pieces: tuple


# ----- region constructors -----

def disk_region(center, radius):
    if not radius > 0:
        raise InvalidParameterError(f"disk radius must be positive, got {radius}")
    c = np.array(center, dtype=float).reshape(2)
    c.setflags(write=False)
    return Region(kind="disk", area=math.pi * radius * radius,
                  scale=float(radius), center=c, radius=float(radius))


def polygon_region(vertices):
    v = np.array(vertices, dtype=float)
    if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 3:
        raise InvalidParameterError("polygon needs at least 3 planar vertices")
    edges = np.roll(v, -1, axis=0) - v
    scale = float(np.hypot(edges[:, 0], edges[:, 1]).max())
    cross = edges[:, 0] * np.roll(edges, -1, axis=0)[:, 1] \
        - edges[:, 1] * np.roll(edges, -1, axis=0)[:, 0]
    if np.any(cross <= 1e-12 * scale * scale):
        raise InvalidParameterError(
            "vertices must describe a strictly convex counter-clockwise polygon")
    area = 0.5 * float(np.sum(v[:, 0] * np.roll(v[:, 1], -1)
                              - np.roll(v[:, 0], -1) * v[:, 1]))
    if area <= 0:
        raise InvalidParameterError("polygon vertices must be counter-clockwise")
    v = v.copy()
    v.setflags(write=False)
    return Region(kind="polygon", area=area, scale=scale, vertices=v)


def make_regular_polygon(num_sides, circumradius, center=(0.0, 0.0)):
    """Regular polygon with num_sides vertices on a circle of given radius."""
    if num_sides < 3:
        raise InvalidParameterError(f"need at least 3 sides, got {num_sides}")
    if not circumradius > 0:
        raise InvalidParameterError("circumradius must be positive")
    ang = TWO_PI * np.arange(num_sides) / num_sides
    c = np.asarray(center, dtype=float)
    verts = c + circumradius * np.stack([np.cos(ang), np.sin(ang)], axis=1)
    return polygon_region(verts)


def make_fig2_region(width):
    """Benchmark convex quadrilateral, parameterized by its short side W.

    Interior angles are pi/2, pi/4, 0.61725..pi, 0.63275..pi; with W = 100
    the area is about 13143 and the far vertices sit at (173.2, 0) and
    (50.73, 122.47).
    """
    if not width > 0:
        raise InvalidParameterError("width must be positive")
    s3 = math.sqrt(3.0)
    s6h = math.sqrt(6.0) / 2.0
    verts = width * np.array([
        [0.0, 0.0],
        [s3, 0.0],
        [s3 - s6h, s6h],
        [0.0, 1.0],
    ])
    return polygon_region(verts)


# ----- containment / reference points -----

def _as_xy(y0):
    xy = getattr(y0, "xy", y0)
    return np.asarray(xy, dtype=float).reshape(2)


def region_contains(region, point, rtol=CONTAINMENT_RTOL):
    xy = _as_xy(point)
    tol = rtol * region.scale
    if region.kind == "disk":
        return np.hypot(*(xy - region.center)) <= region.radius + tol
    v = region.vertices
    edges = np.roll(v, -1, axis=0) - v
    # inward signed distance: cross(edge, point - vertex) / |edge|
    elen = np.hypot(edges[:, 0], edges[:, 1])
    d = (edges[:, 0] * (xy[1] - v[:, 1]) - edges[:, 1] * (xy[0] - v[:, 0])) / elen
    return bool(np.all(d >= -tol))


def reference_point(region, xy):
    """Validate and wrap a receiver location."""
    p = _as_xy(xy)
    if not region_contains(region, p):
        raise InvalidParameterError(
            f"reference point {p.tolist()} lies outside the region")
    p = p.copy()
    p.setflags(write=False)
    return ReferencePoint(xy=p)


# ----- polygon side frames relative to y0 -----

def _side_frames(region, y0):
    """Per-side data relative to y0: outward normal direction angle phi,
    distance p >= 0 from y0 to the side's line, and vertex distances."""
    v = region.vertices - y0[None, :]
    edges = np.roll(v, -1, axis=0) - v
    elen = np.hypot(edges[:, 0], edges[:, 1])
    nx = edges[:, 1] / elen
    ny = -edges[:, 0] / elen
    p = v[:, 0] * nx + v[:, 1] * ny
    p = np.maximum(p, 0.0)            # y0 is inside; clip boundary round-off
    phi = np.arctan2(ny, nx)
    vdist = np.hypot(v[:, 0], v[:, 1])
    return v, np.stack([nx, ny], axis=1), p, phi, vdist


def _outside_arc_intervals(p, phi, r):
    """Outside arcs [start, end] at radius r (scalar), split at the 0/2pi seam.

    Returns (starts, ends) arrays covering subsets of [0, 2pi)."""
    active = p < r
    if not np.any(active):
        return np.empty(0), np.empty(0)
    w = np.arccos(np.clip(p[active] / r, -1.0, 1.0))
    s = np.mod(phi[active] - w, TWO_PI)
    e = s + 2.0 * w
    wrap = e > TWO_PI
    starts = np.concatenate([s, np.zeros(wrap.sum())])
    ends = np.concatenate([np.minimum(e, TWO_PI), e[wrap] - TWO_PI])
    return starts, ends


def _union_measure(starts, ends):
    if starts.size == 0:
        return 0.0
    order = np.argsort(starts, kind="stable")
    s = starts[order]
    e = ends[order]
    run = np.maximum.accumulate(e)
    prev = np.concatenate([[0.0], run[:-1]])
    return float(np.clip(e - np.maximum(s, prev), 0.0, None).sum())


def inside_arc_measure(region, y0, r):
    """Angular measure theta(r) of directions that stay inside the region.

    Vectorized over r. theta(r) = 2*pi for r below the distance to the
    nearest boundary feature and 0 beyond the farthest vertex.
    """
    y = _as_xy(y0)
    if not region_contains(region, y):
        raise InvalidParameterError("reference point lies outside the region")
    r_arr = np.atleast_1d(np.asarray(r, dtype=float))
    if region.kind == "disk":
        d = float(np.hypot(*(y - region.center)))
        W = region.radius
        out = np.full(r_arr.shape, TWO_PI)
        if d <= _ZERO_DIST_RTOL * region.scale:
            out[r_arr > W] = 0.0
        else:
            out[r_arr >= W + d] = 0.0
            mid = (r_arr > W - d) & (r_arr < W + d)
            rm = r_arr[mid]
            arg = (rm * rm + d * d - W * W) / (2.0 * d * rm)
            out[mid] = 2.0 * np.arccos(np.clip(arg, -1.0, 1.0))
        return out if np.ndim(r) else float(out[0])

    _, _, p, phi, vdist = _side_frames(region, y)
    r_max = float(vdist.max())
    rs = np.maximum(r_arr, 1e-300)
    ratio = np.clip(p[None, :] / rs[:, None], -1.0, 1.0)
    w = np.arccos(ratio)
    w[rs[:, None] <= p[None, :]] = 0.0
    s = np.mod(phi[None, :] - w, TWO_PI)
    e = s + 2.0 * w
    starts = np.concatenate([s, np.zeros_like(s)], axis=1)
    ends = np.concatenate([np.minimum(e, TWO_PI),
                           np.clip(e - TWO_PI, 0.0, None)], axis=1)
    order = np.argsort(starts, axis=1, kind="stable")
    starts = np.take_along_axis(starts, order, axis=1)
    ends = np.take_along_axis(ends, order, axis=1)
    run = np.maximum.accumulate(ends, axis=1)
    prev = np.concatenate([np.zeros((rs.size, 1)), run[:, :-1]], axis=1)
    covered = np.clip(ends - np.maximum(starts, prev), 0.0, None).sum(axis=1)
    theta = np.clip(TWO_PI - covered, 0.0, TWO_PI)
    theta[r_arr > r_max] = 0.0
    theta[r_arr < 0.0] = 0.0
    return theta if np.ndim(r) else float(theta[0])


# ----- exact circle clipping (CDF path) -----

def _disk_overlap_area(W, d, r):
    """Area of disk(0, r) overlapped with disk at distance d and radius W."""
    r = np.asarray(r, dtype=float)
    out = np.empty(r.shape)
    full_small = r <= max(W - d, 0.0)
    full_big = r >= W + d
    out[full_small] = np.pi * r[full_small] ** 2
    out[full_big] = np.pi * W * W
    mid = ~(full_small | full_big)
    if np.any(mid):
        rm = np.maximum(r[mid], 1e-300)
        a1 = np.arccos(np.clip((d * d + rm * rm - W * W) / (2 * d * rm), -1, 1))
        a2 = np.arccos(np.clip((d * d + W * W - rm * rm) / (2 * d * W), -1, 1))
        s = np.clip((-d + rm + W) * (d + rm - W) * (d - rm + W) * (d + rm + W),
                    0.0, None)
        out[mid] = rm * rm * a1 + W * W * a2 - 0.5 * np.sqrt(s)
    return out


def _signed_angle(x0, y0_, x1, y1):
    """Signed angle from (x0, y0_) to (x1, y1), wrapped to (-pi, pi]."""
    return np.arctan2(x0 * y1 - y0_ * x1, x0 * x1 + y0_ * y1)


def _polygon_clip_area(v_rel, r):
    """Area of polygon (vertices relative to the circle center) within radius r.

    Vectorized over r; Green's-theorem accumulation per edge with the pieces
    outside the circle replaced by arcs.
    """
    r = np.asarray(r, dtype=float)[:, None]        # (n, 1)
    a = v_rel[None, :, :]                          # (1, L, 2)
    b = np.roll(v_rel, -1, axis=0)[None, :, :]
    e = b - a
    ee = (e * e).sum(axis=2)
    ae = (a * e).sum(axis=2)
    aa = (a * a).sum(axis=2)
    disc = ae * ae - ee * (aa - r * r)             # (n, L)
    sq = np.sqrt(np.clip(disc, 0.0, None))
    t1 = np.clip((-ae - sq) / ee, 0.0, 1.0)
    t2 = np.clip((-ae + sq) / ee, 0.0, 1.0)
    t2 = np.maximum(t2, t1)
    no_hit = disc <= 0.0
    t1 = np.where(no_hit, 0.0, t1)
    t2 = np.where(no_hit, 0.0, t2)

    def point(t):
        return a + t[..., None] * e                # (n, L, 2)

    p0, p1c, p2c, p3 = a + 0 * r[..., None], point(t1), point(t2), b + 0 * r[..., None]
    # inside chord piece [t1, t2]
    inner = 0.5 * (p1c[..., 0] * p2c[..., 1] - p1c[..., 1] * p2c[..., 0])
    # outside pieces [0, t1] and [t2, 1] sweep arcs
    arc1 = 0.5 * r ** 2 * _signed_angle(
        p0[..., 0], p0[..., 1], p1c[..., 0], p1c[..., 1])
    arc2 = 0.5 * r ** 2 * _signed_angle(
        p2c[..., 0], p2c[..., 1], p3[..., 0], p3[..., 1])
    return (inner + arc1 + arc2).sum(axis=1)


# ----- closed-form pdfs used as cross-checks -----

def pdf_disk_closed_form(W, d, r):
    """Distance pdf for a disk of radius W, receiver offset d from center."""
    if not (0 <= d <= W):
        raise InvalidParameterError(f"offset must lie in [0, W], got {d}")
    r = np.asarray(r, dtype=float)
    area = math.pi * W * W
    out = np.zeros(r.shape)
    inner = (r >= 0) & (r <= W - d)
    out[inner] = TWO_PI * r[inner] / area
    if d > 0:
        mid = (r > W - d) & (r < W + d)
        rm = r[mid]
        arg = (rm * rm + d * d - W * W) / (2 * d * rm)
        out[mid] = 2.0 * rm * np.arccos(np.clip(arg, -1.0, 1.0)) / area
    return out


def pdf_regular_polygon_center(num_sides, circumradius, r):
    """Distance pdf from the center of a regular polygon."""
    L = int(num_sides)
    W = float(circumradius)
    interior = math.pi * (L - 2) / L
    apothem = W * math.sin(interior / 2.0)
    area = 0.5 * L * W * W * math.sin(TWO_PI / L)
    r = np.asarray(r, dtype=float)
    out = np.zeros(r.shape)
    inner = (r >= 0) & (r <= apothem)
    out[inner] = TWO_PI * r[inner] / area
    mid = (r > apothem) & (r <= W)
    rm = r[mid]
    out[mid] = (TWO_PI * rm
                - 2.0 * L * rm * np.arccos(apothem / rm)) / area
    return out


def segment_corner_pdf(region, y0, r):
    """Distance pdf via the circular-segment / corner-overlap decomposition.

    Independent cross-check of the arc-measure path. Polygon regions only;
    assumes overlaps of outside regions happen only at corners (true for
    non-degenerate convex polygons within the distance support).
    """
    if region.kind != "polygon":
        raise InvalidParameterError("segment/corner decomposition needs a polygon")
    y = _as_xy(y0)
    if not region_contains(region, y):
        raise InvalidParameterError("reference point lies outside the region")
    v, _, p, _, vdist = _side_frames(region, y)
    L = v.shape[0]
    r = np.asarray(r, dtype=float)
    rs = np.maximum(r, 1e-300)
    total = TWO_PI * np.asarray(r, dtype=float).copy()
    # circular segments beyond each side's line
    for i in range(L):
        seg = 2.0 * rs * np.arccos(np.clip(p[i] / rs, -1.0, 1.0))
        total -= np.where(rs > p[i], seg, 0.0)
    # corner overlaps; corner i sits at vertex i between sides i-1 and i
    edges = np.roll(v, -1, axis=0) - v
    elen = np.hypot(edges[:, 0], edges[:, 1])
    for i in range(L):
        prev = (i - 1) % L
        vert = v[i]
        vd = vdist[i]
        d1 = edges[prev] / elen[prev]          # extension of incoming side
        d2 = -edges[i] / elen[i]               # extension of outgoing side, reversed
        # nearest point of the corner wedge to y0 (origin of v-frame)
        cands = []
        for dvec in (d1, d2):
            t = max(0.0, -float(np.dot(vert, dvec)))
            cands.append(float(np.hypot(*(vert + t * dvec))))
        w = min(cands)
        u1 = -d1
        u2 = -d2
        delta = math.acos(np.clip(np.dot(u1, u2), -1.0, 1.0))
        far = rs > max(vd, 1e-300)
        mid = (rs > w) & ~far
        dc = np.zeros_like(rs)
        dc[mid] = 2.0 * rs[mid] * np.arccos(np.clip(w / rs[mid], -1.0, 1.0))
        dc[far] = rs[far] * (
            -math.pi + delta
            + np.arccos(np.clip(p[i] / rs[far], -1.0, 1.0))
            + np.arccos(np.clip(p[prev] / rs[far], -1.0, 1.0)))
        total += dc
    out = np.clip(total, 0.0, None) / region.area
    out[r > vdist.max()] = 0.0
    out[r < 0] = 0.0
    return out


# ----- distance profile assembly -----

def _line_pair_distances(v, nrm, p, r_max, scale):
    """Distances from y0 to the intersection points of side-line pairs.

    Radii where two outside arcs start or stop overlapping; adjacent pairs
    reproduce the vertex distances."""
    L = v.shape[0]
    out = []
    for i in range(L):
        for j in range(i + 1, L):
            det = nrm[i, 0] * nrm[j, 1] - nrm[i, 1] * nrm[j, 0]
            if abs(det) < 1e-12:
                continue
            x = (p[i] * nrm[j, 1] - p[j] * nrm[i, 1]) / det
            y = (nrm[i, 0] * p[j] - nrm[j, 0] * p[i]) / det
            dist = math.hypot(x, y)
            if 1e-12 * scale < dist < r_max * (1.0 - 1e-12):
                out.append(dist)
    return out


def _dedup_sorted(values, tol):
    out = []
    for val in sorted(values):
        if not out or val - out[-1] > tol:
            out.append(val)
    return out


def _constant_piece_theta(p, phi, r_mid, p_zero_tol):
    """theta value if the arc measure is constant near r_mid, else None.

    Constant means d theta/dr = 0 on the whole analytic piece: every exposed
    endpoint of the merged union of outside arcs must belong to a side at
    (numerically) zero distance, whose arc half-width is pi/2 independent
    of r. Arcs of sides at positive distance grow with r ("moving")."""
    starts, ends = _outside_arc_intervals(p, phi, r_mid)
    if starts.size == 0:
        return TWO_PI
    measure = _union_measure(starts, ends)
    if measure >= TWO_PI - 1e-12:
        return 0.0
    # rotate so an uncovered direction sits at angle 0; afterwards no arc
    # crosses the 0/2pi seam and merged blocks have honest endpoints
    order = np.argsort(starts, kind="stable")
    s = starts[order]
    e = ends[order]
    run = np.maximum.accumulate(e)
    gap = None
    if s[0] > 1e-9:
        gap = 0.5 * s[0]
    else:
        for idx in range(len(s) - 1):
            if s[idx + 1] > run[idx] + 1e-9:
                gap = 0.5 * (run[idx] + s[idx + 1])
                break
        if gap is None:
            if run[-1] >= TWO_PI - 1e-9:
                return None          # no usable gap; let quadrature handle it
            gap = 0.5 * (run[-1] + TWO_PI)
    active = p < r_mid
    pa = p[active]
    w = np.arccos(np.clip(pa / r_mid, -1.0, 1.0))
    s2 = np.mod(phi[active] - w - gap, TWO_PI)
    e2 = s2 + 2.0 * w
    order = np.argsort(s2, kind="stable")
    s2 = s2[order]
    e2 = e2[order]
    moving = pa[order] > p_zero_tol
    tol = 1e-12
    i = 0
    n = s2.size
    while i < n:
        block_start = s2[i]
        block_end = e2[i]
        j = i + 1
        while j < n and s2[j] <= block_end + tol:
            block_end = max(block_end, e2[j])
            j += 1
        for k in range(i, j):
            if moving[k] and (abs(s2[k] - block_start) <= tol
                              or abs(e2[k] - block_end) <= tol):
                return None          # a growing arc is exposed
        i = j
    return TWO_PI - measure


def distance_profile(region, y0):
    """Build the distance law (pdf, cdf, breakpoints) for a reference point."""
    y = _as_xy(y0)
    if not region_contains(region, y):
        raise InvalidParameterError(
            f"reference point {y.tolist()} lies outside the region")
    area = region.area

    if region.kind == "disk":
        d = float(np.hypot(*(y - region.center)))
        W = region.radius
        if d <= _ZERO_DIST_RTOL * region.scale:
            d = 0.0
        r_max = W + d
        breaks = [W + d] if d == 0.0 else \
            ([W + d] if W - d <= BREAKPOINT_DEDUP_RTOL * region.scale
             else [W - d, W + d])

        def pdf(r, _W=W, _d=d):
            r_arr = np.asarray(r, dtype=float)
            out = pdf_disk_closed_form(_W, _d, np.atleast_1d(r_arr))
            return out if r_arr.ndim else float(out[0])

        def cdf(r, _W=W, _d=d, _area=area):
            r_arr = np.atleast_1d(np.asarray(r, dtype=float))
            out = np.clip(_disk_overlap_area(_W, _d, np.maximum(r_arr, 0.0))
                          / _area, 0.0, 1.0)
            out[r_arr <= 0] = 0.0
            return out if np.ndim(r) else float(out[0])

        pieces = ((0.0, W - d, TWO_PI),) if W - d > 0 else ()
        return DistanceProfile(
            r_max=r_max, breakpoints=tuple(breaks), area=area,
            pdf=pdf, cdf=cdf,
            arc_measure=lambda r: inside_arc_measure(region, y, r),
            constant_arc_pieces=pieces)

    v, nrm, p, phi, vdist = _side_frames(region, y)
    r_max = float(vdist.max())
    scale = region.scale
    raw = [float(x) for x in p if x > 1e-12 * scale]
    raw += [float(x) for x in vdist if x > 1e-12 * scale]
    raw += _line_pair_distances(v, nrm, p, r_max, scale)
    raw = [x for x in raw if x < r_max * (1 - 1e-12)]
    breaks = _dedup_sorted(raw, BREAKPOINT_DEDUP_RTOL * max(r_max, scale))
    breaks.append(r_max)

    def pdf(r):
        r_arr = np.asarray(r, dtype=float)
        theta = inside_arc_measure(region, y, np.atleast_1d(r_arr))
        out = np.atleast_1d(r_arr) * theta / area
        out[np.atleast_1d(r_arr) < 0] = 0.0
        return out if r_arr.ndim else float(out[0])

    def cdf(r):
        r_arr = np.atleast_1d(np.asarray(r, dtype=float))
        out = np.empty(r_arr.shape)
        big = r_arr >= r_max
        small = r_arr <= 0
        mid = ~(big | small)
        out[big] = 1.0
        out[small] = 0.0
        if np.any(mid):
            out[mid] = np.clip(
                _polygon_clip_area(v, r_arr[mid]) / area, 0.0, 1.0)
        return out if np.ndim(r) else float(out[0])

    p_zero_tol = 1e-12 * scale
    pieces = []
    lo = 0.0
    for hi in breaks:
        if hi - lo > 1e-12 * max(r_max, scale):
            theta = _constant_piece_theta(p, phi, 0.5 * (lo + hi), p_zero_tol)
            if theta is not None and theta > 0.0:
                pieces.append((lo, hi, theta))
        lo = hi
    return DistanceProfile(
        r_max=r_max, breakpoints=tuple(breaks), area=area,
        pdf=pdf, cdf=cdf,
        arc_measure=lambda r: inside_arc_measure(region, y, r),
        constant_arc_pieces=tuple(pieces))
