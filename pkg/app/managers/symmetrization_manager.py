from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Tuple

import numpy as np
from pydantic import ValidationError
from tqdm import tqdm

from app.core.exceptions import CommandError, CrossCheckError, GeometryError
from app.core.logging_config import get_logger
from app.schemas.geometry.geometry_models import GeometryKind, ToleranceConfig
from app.schemas.polygon.polygon_models import Polygon, PolygonFile
from app.schemas.polygon.regular_models import RegularSpec
from app.schemas.symmetrization.symmetrization_models import SymmetrizationReport
from app.schemas.verifier.verifier_models import FuzzReport, FuzzTrial, RunConfig
from app.services.polygon.polygon_service import PolygonService, get_polygon_service
from app.services.polygon.sampler import ConvexPolygonSampler, get_convex_polygon_sampler
from app.services.regular.regular_gon import regular_area
from app.services.symmetrizer.symmetrizer import Symmetrizer

# Initialize logger for symmetrization and fuzz commands
logger = get_logger("symmetrization_manager")

# Relative slack before a sampled polygon counts as beating the regular one
FUZZ_TOLERANCE = 1e-9


def run_fuzz_trial(task: Tuple[int, np.random.SeedSequence, int, int, GeometryKind, float, ToleranceConfig]) -> FuzzTrial:
    """
    One isoperimetric trial: sample a convex polygon and measure it against
    the regular polygon of the same perimeter. Module level so worker
    processes can pickle it.

    @param task: (index, seed sequence, n_min, n_max, geometry, scale, tolerances).
    @return: FuzzTrial; skipped when sampling or the regular reference fails.
    """
    index, seed_seq, n_min, n_max, geometry, scale, tolerances = task
    rng = np.random.default_rng(seed_seq)
    n = int(rng.integers(n_min, n_max + 1))
    polygon_service = get_polygon_service(tolerances)
    try:
        polygon = get_convex_polygon_sampler(polygon_service).sample_convex_polygon(n, geometry, scale, rng)
        area = polygon_service.area_convex(polygon)
        perimeter = polygon_service.perimeter(polygon)
        reference = regular_area(RegularSpec(n=n, perimeter=perimeter, geometry=geometry))
    except GeometryError as e:
        logger.debug(f"Fuzz trial {index} skipped: {e.detail}")
        return FuzzTrial(index=index, n=n, skipped=True)
    return FuzzTrial(
        index=index,
        n=n,
        area=area,
        perimeter=perimeter,
        regular_area=reference,
        polygon=PolygonFile.from_polygon(polygon),
    )


class SymmetrizationManager:
    """
    Runs symmetrization on a polygon and the randomized isoperimetric check.

    @param polygon_service: Instance of PolygonService.
    @param symmetrizer: Instance of Symmetrizer performing the local moves.
    @param sampler: Convex polygon sampler for seeded inputs.
    """

    def __init__(self, polygon_service: PolygonService, symmetrizer: Symmetrizer, sampler: ConvexPolygonSampler):
        self.polygon_service = polygon_service
        self.symmetrizer = symmetrizer
        self.sampler = sampler

    def sample(self, cfg: RunConfig) -> Polygon:
        """Seeded convex input polygon for cmd_symmetrize."""
        try:
            return self.sampler.sample_convex_polygon(cfg.n, cfg.geometry, cfg.scale, cfg.seed)
        except GeometryError as e:
            logger.error(f"Sampling failed for {cfg.geometry.value} n={cfg.n}: {e.detail}")
            raise CommandError.from_error(e)

    def cmd_symmetrize(self, polygon: Polygon, max_iter: int) -> SymmetrizationReport:
        """
        Symmetrizes a convex polygon.

        @param polygon: Convex input.
        @param max_iter: Pass budget.
        @return: SymmetrizationReport; the final area has passed the Gauss-Bonnet cross-check.
        """
        try:
            logger.info(f"Starting symmetrization of a {polygon.geometry.value} {polygon.n}-gon")
            report = self.symmetrizer.symmetrize(polygon, max_iter)
            self.polygon_service.checked_area(report.final_polygon)
            logger.info(f"Symmetrization finished: converged={report.converged}, iterations={report.iterations}")
            return report
        except (GeometryError, ValidationError) as e:
            logger.error(f"Symmetrization failed: {e}")
            raise CommandError.from_error(e)

    def relative_area_gap(self, report: SymmetrizationReport) -> float:
        """|area - regular_area| / regular_area for the final polygon of a report."""
        final = report.final_polygon
        spec = RegularSpec(n=final.n, perimeter=self.polygon_service.perimeter(final), geometry=final.geometry)
        reference = regular_area(spec)
        return abs(report.area_trace[-1] - reference) / reference

    def cmd_fuzz(self, cfg: RunConfig, progress: Optional[bool] = None) -> FuzzReport:
        """
        Randomized isoperimetric check over cfg.trials sampled convex polygons.

        Trial seeds are spawned from cfg.seed and results are aggregated in trial
        order, so the report does not depend on cfg.workers.

        @param cfg: Run configuration (geometry, n range, scale, seed, trials, workers).
        @param progress: Show a progress bar; None shows it only on a terminal.
        @return: FuzzReport.
        """
        n_range = cfg.n_range
        seeds = np.random.SeedSequence(cfg.seed).spawn(cfg.trials)
        tasks = [
            (i, seeds[i], n_range.start, n_range.stop - 1, cfg.geometry, cfg.scale, self.polygon_service.tolerances)
            for i in range(cfg.trials)
        ]
        logger.info(
            f"Fuzzing {cfg.trials} {cfg.geometry.value} polygons, n in [{n_range.start}, {n_range.stop - 1}], "
            f"scale {cfg.scale}, seed {cfg.seed}, workers {cfg.workers}"
        )
        disable = None if progress is None else not progress

        if cfg.workers > 1:
            with ProcessPoolExecutor(max_workers=cfg.workers) as executor:
                chunksize = max(1, cfg.trials // (4 * cfg.workers))
                results = list(tqdm(executor.map(run_fuzz_trial, tasks, chunksize=chunksize), total=cfg.trials, disable=disable))
        else:
            results = [run_fuzz_trial(task) for task in tqdm(tasks, disable=disable)]

        skipped = sum(r.skipped for r in results)
        measured = [r for r in results if not r.skipped]
        violations = [r for r in measured if r.area > r.regular_area * (1 + FUZZ_TOLERANCE)]
        for r in violations:
            logger.error(f"Trial {r.index}: area {r.area} exceeds regular area {r.regular_area} (n={r.n})")
        worst = max(measured, key=lambda r: r.ratio, default=None)

        if worst is not None:
            try:
                self.polygon_service.checked_area(worst.polygon.to_polygon(self.polygon_service.tolerances.eps_predicate))
            except CrossCheckError as e:
                raise CommandError.from_error(e)

        report = FuzzReport(
            geometry=cfg.geometry,
            seed=cfg.seed,
            trials=cfg.trials,
            skipped=skipped,
            max_ratio=worst.ratio if worst is not None else 0.0,
            worst_polygon=worst.polygon if worst is not None else None,
            violations=len(violations),
            tolerance=FUZZ_TOLERANCE,
        )
        logger.info(f"Fuzz finished: {report.violations} violations, {skipped} skipped, max ratio {report.max_ratio}")
        return report


def get_symmetrization_manager(
    polygon_service: PolygonService, symmetrizer: Symmetrizer, sampler: ConvexPolygonSampler
) -> SymmetrizationManager:
    """
    Factory for SymmetrizationManager.

    @param polygon_service: Instance of PolygonService.
    @param symmetrizer: Instance of Symmetrizer.
    @param sampler: Instance of ConvexPolygonSampler.
    @return: Instance of SymmetrizationManager.
    """
    return SymmetrizationManager(polygon_service=polygon_service, symmetrizer=symmetrizer, sampler=sampler)
