"""Monte-Carlo harness: random cameras, image noise, and the noise-sweep
experiment comparing the 8-point, 7-point and cube-8-point estimators.

Determinism contract: every output is a pure function of the master seed.
Trial geometry (cube, cameras) and the noise direction are keyed by
(seed, trial) and shared across noise levels; a level only scales the
noise draw.  Common random numbers keep the per-level medians directly
comparable along the noise grid.
"""

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .degeneracy import random_combinatorial_cube
from .estimators import (
    cube_eight_point,
    eight_point,
    fundamental_from_cameras,
    seven_point,
)
from .exceptions import DegenerateInput, EpicubeError
from .quadrics import NONRULED_NONDEGENERATE, classify, quadric_through_points
from .projective import (
    as_points,
    dehomogenize,
    epipolar_residual,
    focal_point,
    grassmann_angle,
    homogenize,
    project_all,
)

ALGOS = ("8pt", "7pt", "cube8")
FAILED_ANGLE = math.pi / 2.0


@dataclass
class TrialRecord:
    trial: int
    noise: float
    algo: str
    angle_rad: float
    residual: float
    failed: bool
    cube_seed: int
    cam_seed: int


@dataclass
class ExperimentConfig:
    trials: int = 2000
    noise_levels: tuple = tuple(np.linspace(0.0, 0.10, 11))
    cube_spread: float = 1.0
    camera_radius: float = 6.0
    seed: int = 0

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if any(n < 0 for n in self.noise_levels):
            raise ValueError("noise levels must be nonnegative")


def look_at_camera(f):
    """Camera [R | -R f] at affine center f, principal axis toward origin."""
    f = np.asarray(f, dtype=float).reshape(3)
    z = -f / np.linalg.norm(f)
    up = np.array([0.0, 0.0, 1.0])
    if abs(z @ up) > 0.99:
        up = np.array([0.0, 1.0, 0.0])
    x = np.cross(up, z)
    x /= np.linalg.norm(x)
    y = np.cross(z, x)
    R = np.vstack([x, y, z])
    return np.hstack([R, (-R @ f)[:, None]])


def sample_camera_pair(rng, radius, min_separation=None):
    """Two look-at cameras with centers on a +-5% shell of the radius.

    Resamples until the centers are at least ``min_separation`` apart
    (default 1.95 * radius, i.e. wide-baseline pairs viewing the scene
    from nearly opposite sides).  Narrow baselines amplify image noise
    dramatically in the near-critical cube geometry.
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    if min_separation is None:
        min_separation = 1.97 * radius
    while True:
        centers = []
        for _ in range(2):
            v = rng.standard_normal(3)
            v /= np.linalg.norm(v)
            r = radius * rng.uniform(0.95, 1.05)
            centers.append(r * v)
        if np.linalg.norm(centers[0] - centers[1]) >= min_separation:
            break
    return look_at_camera(centers[0]), look_at_camera(centers[1])


def add_noise(pts, sigma_frac, rng):
    """Gaussian pixel noise scaled by the bounding-box diagonal.

    Points are dehomogenized, perturbed i.i.d. with standard deviation
    sigma_frac * (bbox diagonal of the cloud), and rehomogenized.
    """
    if sigma_frac < 0:
        raise ValueError("sigma_frac must be nonnegative")
    P = as_points(pts, 3)
    aff = dehomogenize(P)
    if sigma_frac == 0.0:
        return P.copy()
    diag = np.linalg.norm(aff.max(axis=0) - aff.min(axis=0))
    noisy = aff + rng.normal(0.0, sigma_frac * diag, size=aff.shape)
    return homogenize(noisy)


def _seed_of(seq):
    return int(seq.generate_state(1)[0])


def run_trial(cfg, trial_idx, sigma):
    """One trial at one noise level; returns a record per algorithm."""
    geo = np.random.SeedSequence([cfg.seed, trial_idx])
    cube_ss, cam_ss, noise_ss = geo.spawn(3)
    cube_seed, cam_seed = _seed_of(cube_ss), _seed_of(cam_ss)

    cube_rng = np.random.default_rng(cube_ss)
    cam_rng = np.random.default_rng(cam_ss)
    cube = random_combinatorial_cube(cube_rng, spread=cfg.cube_spread)
    attempts = 0
    while True:
        attempts += 1
        # A ruled 10-point quadric is a critical configuration: several
        # rank-2 pencil members fit the data exactly and no estimator can
        # single one out.  Resample geometry until reconstruction is
        # well-posed (a fresh cube every 16 camera draws).
        if attempts % 16 == 0:
            cube = random_combinatorial_cube(cube_rng, spread=cfg.cube_spread)
        A1, A2 = sample_camera_pair(cam_rng, cfg.camera_radius)
        c1, c2 = focal_point(A1), focal_point(A2)
        # Cameras whose center hits a cube vertex would break projection.
        d = np.min(
            np.linalg.norm(
                dehomogenize(cube.vertices)[None, :, :]
                - np.vstack([c1[:3] / c1[3], c2[:3] / c2[3]])[:, None, :],
                axis=2,
            )
        )
        if d <= 1e-6:
            continue
        try:
            Q = quadric_through_points(np.vstack([cube.vertices, c1, c2]))
        except EpicubeError:
            continue
        if classify(Q).tag == NONRULED_NONDEGENERATE:
            break
    F_true = fundamental_from_cameras(A1, A2)
    X = project_all(A1, cube.vertices)
    Y = project_all(A2, cube.vertices)
    noise_rng = np.random.default_rng(noise_ss)
    Xn = add_noise(X, sigma, noise_rng)
    Yn = add_noise(Y, sigma, noise_rng)

    records = []

    def record(algo, F=None, failed=False):
        if failed or F is None:
            angle, resid, failed = FAILED_ANGLE, float("nan"), True
        else:
            angle = grassmann_angle(F, F_true)
            resid = epipolar_residual(F, Xn, Yn)
        records.append(
            TrialRecord(
                trial=trial_idx,
                noise=float(sigma),
                algo=algo,
                angle_rad=float(angle),
                residual=resid,
                failed=bool(failed),
                cube_seed=cube_seed,
                cam_seed=cam_seed,
            )
        )

    try:
        record("8pt", eight_point(Xn, Yn))
    except (DegenerateInput, EpicubeError):
        record("8pt", failed=True)
    try:
        sol = seven_point(Xn[:7], Yn[:7])
        F7, _ = sol.best(Xn, Yn)
        record("7pt", F7)
    except EpicubeError:
        record("7pt", failed=True)
    try:
        record("cube8", cube_eight_point(Xn, Yn))
    except EpicubeError:
        record("cube8", failed=True)
    return records


def run_noise_sweep(cfg):
    """Full sweep: cfg.trials per noise level, three algorithms each."""
    records = []
    for sigma in cfg.noise_levels:
        for trial_idx in range(cfg.trials):
            records.extend(run_trial(cfg, trial_idx, sigma))
    return records


CSV_HEADER = ("trial", "noise", "algo", "angle_rad", "residual", "failed", "cube_seed", "cam_seed")


def records_to_csv(records, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_HEADER)
        for r in records:
            w.writerow(
                [
                    r.trial,
                    repr(r.noise),
                    r.algo,
                    repr(r.angle_rad),
                    "nan" if math.isnan(r.residual) else repr(r.residual),
                    int(r.failed),
                    r.cube_seed,
                    r.cam_seed,
                ]
            )


def summarize(records):
    """Per (noise, algo): mean/median angle and failure rate."""
    keys = sorted({(r.noise, r.algo) for r in records})
    out = []
    for noise, algo in keys:
        angles = [r.angle_rad for r in records if r.noise == noise and r.algo == algo]
        fails = [r.failed for r in records if r.noise == noise and r.algo == algo]
        out.append(
            {
                "noise": noise,
                "algo": algo,
                "median_angle": float(np.median(angles)),
                "mean_angle": float(np.mean(angles)),
                "fail_rate": float(np.mean(fails)),
                "n": len(angles),
            }
        )
    return out
