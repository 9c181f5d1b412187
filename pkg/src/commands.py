"""
command handlers behind main.py
each handler returns the process exit code; library errors are caught here
and nowhere else
"""
import sys
from dataclasses import dataclass
from typing import Optional

import config
from src.catalog import catalog_entries, parse_catalog_spec
from src.characters import verify_theorem_c
from src.errors import (EXIT_OK, EXIT_VERIFICATION_FAILED, ConfigError, ConfSplitError,
                        IdentityInputError)
from src.identities import (Verdict, parse_weight_function, purity_check, verify_napolitano,
                            verify_splitting_betti, verify_splitting_compact_support,
                            verify_splitting_hodge, verify_vakilwood)
from src.phi import phi_map
from src.pipeline import Pipeline
from src.reports import Reporter, emit, render_catalog, render_verdicts
from src.spectral import ORDERED, UNORDERED
from src.variety import load_model

IDENTITIES = ["splitting-hodge", "splitting-betti", "napolitano", "vakilwood",
              "theorem-c", "purity", "phi", "compact-support"]
# identities that also make sense when X itself is compact
COMPACT_BASE_IDENTITIES = {"purity", "phi"}
SPACES = [ORDERED, UNORDERED]
FORMATS = ["json", "csv"]


@dataclass
class RunConfig:
    catalog: Optional[str] = None
    model_path: Optional[str] = None
    punctures: int = 0
    space: str = config.DEFAULT_SPACE
    n_max: Optional[int] = None
    checks: int = config.DEFAULT_CHECKS_LEVEL
    output_format: str = config.DEFAULT_FORMAT
    out: Optional[str] = None
    allow_uncertified: bool = False
    basis_ceiling: Optional[int] = None
    history: Optional[str] = None
    history_summary: Optional[str] = None
    weights: Optional[str] = None

    def validate(self):
        problems = []
        if (self.catalog is None) == (self.model_path is None):
            problems.append("exactly one of --catalog and --model is required")
        if self.punctures < 0:
            problems.append(f"--punctures must be >= 0, got {self.punctures}")
        if self.n_max is not None and self.n_max < 0:
            problems.append(f"--n-max must be >= 0, got {self.n_max}")
        if self.checks not in (0, 1, 2):
            problems.append(f"--checks must be 0, 1 or 2, got {self.checks}")
        if self.space not in SPACES:
            problems.append(f"--space must be ordered or unordered, got {self.space!r}")
        if self.output_format not in FORMATS:
            problems.append(f"--format must be json or csv, got {self.output_format!r}")
        if problems:
            raise ConfigError("; ".join(problems))
        return self

    def compute_n_max(self):
        return config.DEFAULT_N_MAX if self.n_max is None else self.n_max

    def verify_truncation(self, model):
        """--n-max when given, otherwise deeper for models whose classes all have p = q"""
        if self.n_max is not None:
            return self.n_max
        if all(cls.hodge.p == cls.hodge.q for cls in model.classes):
            return config.TRUNCATION_GENUS_ZERO
        return config.TRUNCATION_GENUS_POSITIVE

    def load_model(self):
        if self.catalog is not None:
            return parse_catalog_spec(self.catalog)
        return load_model(self.model_path)

    def pipeline(self, model, punctures):
        return Pipeline(model, punctures, checks=self.checks, basis_ceiling=self.basis_ceiling,
                        allow_uncertified=self.allow_uncertified, verbose=True)


def _report_error(error):
    print(f"Error ({type(error).__name__}): {error}", file=sys.stderr)
    for problem in getattr(error, "problems", None) or []:
        print(f"  - {problem}", file=sys.stderr)
    return error.exit_code


def _print_warnings(warnings):
    for warning in warnings:
        print(f"Warning: {warning}", file=sys.stderr)


def cmd_compute(run_config):
    """hodge table of F(X_r, n) or Conf^n(X_r) for n <= n_max"""
    try:
        run_config.validate()
        model = run_config.load_model()
        pipeline = run_config.pipeline(model, run_config.punctures).run(run_config.compute_n_max())
        reporter = Reporter(pipeline)
        emit(reporter.render_table(run_config.space, run_config.output_format), run_config.out)
        _write_history(reporter, run_config)
        _print_warnings(pipeline.warnings())
        if pipeline.failed_checks():
            print(f"Error: {len(pipeline.failed_checks())} structural check(s) failed", file=sys.stderr)
            return EXIT_VERIFICATION_FAILED
        return EXIT_OK
    except ConfSplitError as e:
        return _report_error(e)


def _write_history(reporter, run_config):
    if run_config.history:
        ok, message = reporter.export_run_data(run_config.history)
        if not ok:
            raise ConfigError(message)
    if run_config.history_summary:
        try:
            reporter.generate_history_report(run_config.history_summary)
        except OSError as e:
            raise ConfigError(f"cannot write history summary: {e}")


def rebase(model, punctures):
    """
    (base model, punctures on X) for a verification run; a compact base with
    punctures is traded for the once-punctured noncompact model
    """
    if model.compact and punctures >= 1:
        return model.punctured(), punctures - 1
    return model, punctures


def cmd_verify(identity, run_config):
    """run both pipelines and the checker for one identity"""
    try:
        run_config.validate()
        if identity not in IDENTITIES:
            raise ConfigError(f"unknown identity {identity!r} (known: {', '.join(IDENTITIES)})")
        if run_config.weights and identity != "purity":
            raise ConfigError("--weights only applies to verify purity")
        original = run_config.load_model()
        model, r_x = rebase(original, run_config.punctures)
        if model.compact and identity not in COMPACT_BASE_IDENTITIES:
            raise IdentityInputError(
                f"{identity} needs a noncompact X, but {model.name} with 0 punctures is compact; "
                f"pass --punctures 1 or more")
        N = run_config.verify_truncation(model)
        header = {
            "base": original.describe(),
            "effective_base": model.describe(),
            "punctures": r_x,
            "n_max": N,
        }
        inputs = {"X": f"{model.name} - {r_x} pts", "X-P": f"{model.name} - {r_x + 1} pts"}

        if identity == "phi":
            verdicts, warnings = _verify_phi(model, r_x + 1, N, run_config)
        elif identity == "purity":
            verdicts, warnings = _verify_purity(model, r_x, N, run_config)
        else:
            x_run = run_config.pipeline(model, r_x).run(N)
            xp_run = run_config.pipeline(model, r_x + 1).run(N)
            header["certificate"] = x_run.certificate.to_dict()
            warnings = x_run.warnings() + [w for w in xp_run.warnings() if w not in x_run.warnings()]
            verdicts = [_run_identity(identity, x_run, xp_run, model.dim_c, N, inputs)]
            failed = x_run.failed_checks() + xp_run.failed_checks()
            if failed:
                verdicts.append(Verdict("structural-checks", inputs, N, False,
                                        failed[0]["description"],
                                        [event["description"] for event in failed]))

        emit(render_verdicts(identity, verdicts, header, run_config.output_format, warnings),
             run_config.out)
        _print_warnings(warnings)
        if all(verdict.passed for verdict in verdicts):
            return EXIT_OK
        print(f"Error: identity {identity} failed", file=sys.stderr)
        return EXIT_VERIFICATION_FAILED
    except ConfSplitError as e:
        return _report_error(e)


def _run_identity(identity, x_run, xp_run, d, N, inputs):
    if identity == "theorem-c":
        report = verify_theorem_c(xp_run.characters, x_run.characters, d)
        return Verdict("theorem-c", dict(inputs, d=d), N, report["pass"],
                       report["first_failure"], report["levels"])
    series_x = x_run.series(N)
    series_xp = xp_run.series(N)
    if identity == "splitting-hodge":
        return verify_splitting_hodge(series_xp, series_x, d, inputs)
    if identity == "splitting-betti":
        return verify_splitting_betti(series_xp, series_x, d, inputs)
    if identity == "napolitano":
        return verify_napolitano(series_xp, series_x, d, inputs)
    if identity == "vakilwood":
        return verify_vakilwood(series_xp.e_polynomials(d), series_x.e_polynomials(d), inputs)
    return verify_splitting_compact_support(series_xp, series_x, d, inputs)


def _verify_purity(model, r, N, run_config):
    weight_function = None
    if run_config.weights:
        weight_function = parse_weight_function(run_config.weights)
    run = run_config.pipeline(model, r).run(N)
    verdict = purity_check(run.unordered(), weight_function=weight_function)
    verdict.inputs = {"X": f"{model.name} - {r} pts",
                      "slope": None if model.slope is None else str(model.slope),
                      "weights": run_config.weights}
    for row in verdict.details:
        row["follows_slope"] = (None if model.slope is None
                                else row["weights"] == [model.slope * row["i"]])
    return [verdict], run.warnings()


def _verify_phi(model, r, N, run_config):
    """bijectivity per block for every n, and d1 commutation when X-bar is noncompact"""
    inputs = {"X-P": f"{model.name} - {r} pts"}
    verdicts = []
    warnings = []
    if model.compact:
        warnings.append(f"{model.name} is compact: d1 commutation of Phi is reported, not asserted")
    for n in range(N + 1):
        phi = phi_map(model, r, n, run_config.basis_ceiling)
        report = phi.bijectivity_report()
        details = [{"key": list(key), "target": rows, "source": cols, "rank": rk}
                   for key, (rows, cols, rk) in sorted(report.items())]
        bad = next((row for row in details
                    if not row["target"] == row["source"] == row["rank"]), None)
        verdicts.append(Verdict("phi-bijective", dict(inputs, n=n), n, bad is None, bad, details))

        failures = [list(key) for key in phi.commutation_failures()]
        commutes = not failures
        if model.compact:
            if failures:
                warnings.append(f"Phi does not commute with d1 at n={n} on {len(failures)} block(s)")
            continue
        verdicts.append(Verdict("phi-commutes", dict(inputs, n=n), n, commutes,
                                failures[0] if failures else None, failures))
    return verdicts, warnings


def cmd_catalog(output_format=config.DEFAULT_FORMAT, out=None):
    """listing of the built-in models"""
    try:
        if output_format not in FORMATS:
            raise ConfigError(f"--format must be json or csv, got {output_format!r}")
        emit(render_catalog(catalog_entries(), output_format), out)
        return EXIT_OK
    except ConfSplitError as e:
        return _report_error(e)
