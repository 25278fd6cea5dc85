from __future__ import absolute_import, annotations

import logging
import os
import time
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from common.errors import CheckpointError, ConfigurationError, ResourceCapError
from common.utils import Utils
from excluder.certify import certify_exclusion
from excluder.norms import exclude_range
from interval.enclosure import Enclosure
from rangecert.certificate import PARTIAL_NOTE_PREFIX, Certificate, CertificateCheck
from rangecert.constants import certify_derived_constants, certify_robin_constant
from rangecert.high import certify_high_range
from rangecert.low import certify_low_range
from rangecert.mid import certify_mid_range
from rangecert.selftest import certify_forms_selftest
from scanner.config import DEFAULT_BLOCK_SIZE, ScanConfig
from scanner.scan import certify_scan, scan_range
from sdverify.sigma import SIGMA_LIMIT, certify_sigma_extremes
from sdverify.sums import FULL_RANGE, certify_sd_constants


logger = logging.getLogger("singular.cli.pipeline")

STAGES = (
    "constants",
    "forms-selftest",
    "sdverify",
    "sigma-extremes",
    "high-cert",
    "mid-cert",
    "scan-low-i",
    "scan-low-ii",
    "low-cert",
    "exclude",
)

DEFAULT_OUTPUT_DIR = "./certificates"
EXCLUDE_X_MAX = 3 * 10 ** 5
SCAN_LOW_I = (10 ** 7, 10 ** 10, "1e-3", 16)
SCAN_LOW_II = (3 * 10 ** 5, 10 ** 7, "4e-3", 6)
DESK_SDVERIFY_N_MAX = 10 ** 6
DESK_SIGMA_LIMIT = 10 ** 6
DESK_SCAN_LOW_I_X_MAX = 10 ** 8
DESK_EXCLUDE_X_MAX = 10 ** 4
SUMMARY_CLAIM = "no singular units: verified"


class PipelineConfig:
    """
    Attributes:
        - stages: the stages to run, always executed in the order of STAGES
        - threads: worker processes for the sieves, scans and the exclusion
        - block_size: the scanner block size
        - output_dir: where certificates, checkpoints and CSV dumps are written
        - emit_csv: whether the exclusion writes its per discriminant CSV
        - desk_scale: shrink the long stages to their desk sub-ranges and mark their output partial
    """

    def __init__(self, stages: List[str], threads: int, block_size: int, output_dir: str, emit_csv: bool = False,
                 desk_scale: bool = False) -> None:
        unknown = [stage for stage in stages if stage not in STAGES]
        if unknown:
            raise ConfigurationError(f"Unknown stages {unknown}, expected a subset of {list(STAGES)}")
        if not stages:
            raise ConfigurationError("No stage selected")
        if threads < 1 or block_size < 1:
            raise ConfigurationError(f"Invalid threads [{threads}] or block size [{block_size}]")
        self.stages = [stage for stage in STAGES if stage in stages]
        self.threads = threads
        self.block_size = block_size
        self.output_dir = output_dir
        self.emit_csv = emit_csv
        self.desk_scale = desk_scale

    @staticmethod
    def build_from_env(stages: Optional[List[str]] = None, threads: Optional[int] = None,
                       block_size: Optional[int] = None, output_dir: Optional[str] = None, emit_csv: bool = False,
                       desk_scale: bool = False) -> PipelineConfig:
        """Values not given explicitly come from SINGULAR_THREADS, SINGULAR_BLOCK_SIZE and SINGULAR_OUTPUT_DIR."""
        return PipelineConfig(
            list(stages) if stages else list(STAGES),
            threads if threads is not None else Utils.env_int("SINGULAR_THREADS", os.cpu_count() or 1),
            block_size if block_size is not None else Utils.env_int("SINGULAR_BLOCK_SIZE", DEFAULT_BLOCK_SIZE),
            output_dir if output_dir else os.getenv("SINGULAR_OUTPUT_DIR", DEFAULT_OUTPUT_DIR),
            emit_csv,
            desk_scale
        )

    def to_repr(self) -> dict:
        return {
            "stages": list(self.stages),
            "threads": self.threads,
            "blockSize": self.block_size,
            "outputDir": self.output_dir,
            "emitCsv": self.emit_csv,
            "deskScale": self.desk_scale,
        }

    @staticmethod
    def from_repr(raw: dict) -> PipelineConfig:
        return PipelineConfig(
            raw["stages"],
            raw["threads"],
            raw["blockSize"],
            raw["outputDir"],
            raw.get("emitCsv", False),
            raw.get("deskScale", False)
        )

    def __eq__(self, o: object) -> bool:
        if not isinstance(o, PipelineConfig):
            return False
        return o.to_repr() == self.to_repr()

    def __repr__(self) -> str:
        return f"PipelineConfig({self.stages}, threads={self.threads}, desk_scale={self.desk_scale})"


class PipelineOutcome:
    """
    Attributes:
        - certificates: every certificate written, in stage order, the summary last
        - failed_stage: the first stage whose certificate does not verify or that raised, if any
    """

    def __init__(self, certificates: List[Certificate], failed_stage: Optional[str] = None) -> None:
        self.certificates = certificates
        self.failed_stage = failed_stage

    @property
    def verified(self) -> bool:
        return self.failed_stage is None and all(certificate.verified for certificate in self.certificates)

    @property
    def exit_code(self) -> int:
        return 0 if self.verified else 1

    def certificate(self, stage: str) -> Optional[Certificate]:
        return next((certificate for certificate in self.certificates if certificate.stage == stage), None)


class Pipeline:

    def __init__(self, config: PipelineConfig) -> None:
        self.config = config
        self._caps = {}  # type: Dict[str, Certificate]
        self._runners = {
            "constants": self._constants,
            "forms-selftest": self._forms_selftest,
            "sdverify": self._sdverify,
            "sigma-extremes": self._sigma_extremes,
            "high-cert": self._high,
            "mid-cert": self._mid,
            "scan-low-i": self._scan_low_i,
            "scan-low-ii": self._scan_low_ii,
            "low-cert": self._low,
            "exclude": self._exclude,
        }  # type: Dict[str, Callable[[], List[Certificate]]]

    def _constants(self) -> List[Certificate]:
        return [certify_robin_constant(), certify_derived_constants()]

    def _forms_selftest(self) -> List[Certificate]:
        return [certify_forms_selftest()]

    def _sdverify(self) -> List[Certificate]:
        if self.config.desk_scale:
            certificate = certify_sd_constants(DESK_SDVERIFY_N_MAX, threads=self.config.threads)
            certificate.mark_partial(f"n <= {DESK_SDVERIFY_N_MAX} instead of {FULL_RANGE}")
            return [certificate]
        return [certify_sd_constants(FULL_RANGE, threads=self.config.threads)]

    def _sigma_extremes(self) -> List[Certificate]:
        if self.config.desk_scale:
            certificate = certify_sigma_extremes(DESK_SIGMA_LIMIT, self.config.threads)
            certificate.mark_partial(f"n <= {DESK_SIGMA_LIMIT} instead of {SIGMA_LIMIT}")
            return [certificate]
        return [certify_sigma_extremes(SIGMA_LIMIT, self.config.threads)]

    def _high(self) -> List[Certificate]:
        return [certify_high_range()]

    def _mid(self) -> List[Certificate]:
        return list(certify_mid_range())

    def _scan(self, stage: str, x_min: int, x_max: int, eps_label: str, cap: int) -> List[Certificate]:
        config = ScanConfig.build(x_min, x_max, eps_label, block_size=self.config.block_size,
                                  threads=self.config.threads)
        checkpoint = os.path.join(self.config.output_dir, f"{x_min}-{x_max}.ckpt.json")
        report = scan_range(config, checkpoint)
        report.ensure_unsaturated()
        certificate = certify_scan(report, stage, cap)
        self._caps[stage] = certificate
        return [certificate]

    def _scan_low_i(self) -> List[Certificate]:
        x_min, x_max, eps_label, cap = SCAN_LOW_I
        if not self.config.desk_scale:
            return self._scan("scan-low-i", x_min, x_max, eps_label, cap)
        certificates = self._scan("scan-low-i", x_min, DESK_SCAN_LOW_I_X_MAX, eps_label, cap)
        certificates[0].mark_partial("low-range scan truncated")
        return certificates

    def _scan_low_ii(self) -> List[Certificate]:
        x_min, x_max, eps_label, cap = SCAN_LOW_II
        return self._scan("scan-low-ii", x_min, x_max, eps_label, cap)

    def _scan_cap(self, stage: str) -> Certificate:
        """The scan certificate of this run, or the one left in the output directory by an earlier run."""
        if stage in self._caps:
            return self._caps[stage]
        file_path = os.path.join(self.config.output_dir, f"{stage}.cert.json")
        if not os.path.exists(file_path):
            raise ConfigurationError(f"Stage low-cert needs the [{stage}] certificate, run that stage first")
        certificate = Certificate.read(file_path)
        if not certificate.verified:
            raise CheckpointError(file_path, "the scan it records did not verify")
        return certificate

    def _low(self) -> List[Certificate]:
        high_scan = self._scan_cap("scan-low-i")
        low_scan = self._scan_cap("scan-low-ii")
        upper, lower = certify_low_range(int(high_scan.total.hi), int(low_scan.total.hi))
        for certificate in (upper, lower):
            for scan in (high_scan, low_scan):
                if scan.partial:
                    certificate.mark_partial(f"cap from {scan.stage}, low-range scan truncated")
        return [upper, lower]

    def _exclude(self) -> List[Certificate]:
        x_max = DESK_EXCLUDE_X_MAX if self.config.desk_scale else EXCLUDE_X_MAX
        csv_path = os.path.join(self.config.output_dir, "exclude.csv") if self.config.emit_csv else None
        if csv_path is not None:
            os.makedirs(self.config.output_dir, exist_ok=True)
        certificate = certify_exclusion(exclude_range(x_max, self.config.threads, csv_path=csv_path))
        if self.config.desk_scale:
            certificate.mark_partial(f"|delta| <= {x_max} instead of {EXCLUDE_X_MAX}")
        return [certificate]

    def _summary(self, certificates: List[Certificate]) -> Certificate:
        failed = [certificate for certificate in certificates if not certificate.verified]
        checks = [CertificateCheck(f"{certificate.stage} verified", Enclosure.point(int(certificate.verified)),
                                   ">=", 1) for certificate in certificates]
        notes = []
        missing = [stage for stage in STAGES if stage not in self.config.stages]
        if missing:
            notes.append(f"{PARTIAL_NOTE_PREFIX} stages not run {missing}")
        for certificate in certificates:
            for note in certificate.notes:
                if note.startswith(PARTIAL_NOTE_PREFIX):
                    reason = note[len(PARTIAL_NOTE_PREFIX):].strip()
                    notes.append(f"{PARTIAL_NOTE_PREFIX} {certificate.stage}, {reason}")
        if not failed and not notes:
            notes.append(SUMMARY_CLAIM)
        summary = Certificate("summary", {"stages": len(self.config.stages)}, [], Enclosure.point(len(failed)),
                              Fraction(1), notes, checks, sum(certificate.runtime_ms for certificate in certificates))
        return summary

    def run(self) -> PipelineOutcome:
        """
        Run the configured stages in order, writing each certificate as soon as it exists. The pipeline stops at the
        first stage that does not verify.

        :raise ConfigurationError: on an invalid scan configuration or a missing scan certificate
        :raise CheckpointError: on an unusable checkpoint or certificate file
        :raise ResourceCapError: when a sieve would exceed its cap or a counter saturated
        """
        started = time.perf_counter()
        certificates = []  # type: List[Certificate]
        failed_stage = None
        for stage in self.config.stages:
            logger.info(f"Stage [{stage}] started")
            stage_started = time.perf_counter()
            try:
                produced = self._runners[stage]()
            except (ConfigurationError, CheckpointError, ResourceCapError):
                logger.error(f"Stage [{stage}] can not run")
                raise
            except Exception:
                logger.exception(f"Stage [{stage}] failed")
                failed_stage = stage
                break
            for certificate in produced:
                certificate.write(self.config.output_dir)
            certificates.extend(produced)
            logger.info(f"Stage [{stage}] finished in [{int((time.perf_counter() - stage_started) * 1000)}] ms")
            if not all(certificate.verified for certificate in produced):
                failed = [certificate.stage for certificate in produced if not certificate.verified]
                logger.warning(f"Stage [{stage}] does not verify: {failed}")
                failed_stage = stage
                break
        if failed_stage is None:
            summary = self._summary(certificates)
            summary.write(self.config.output_dir)
            certificates.append(summary)
            logger.info(f"Pipeline finished in [{int((time.perf_counter() - started) * 1000)}] ms, "
                        f"notes {summary.notes}")
        return PipelineOutcome(certificates, failed_stage)
