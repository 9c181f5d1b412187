"""
pipeline module: runs the engine one configuration count at a time
each tick builds the E1 page for the next n, takes d1 and E2, assembles
the ordered table and the characters, and keeps a history snapshot
"""
import json
import sys

import config
from src.arrangement import brute_force_os_dims, mobius_number
from src.characters import all_characters, invariant_dims, projector_rank, unordered_table
from src.e1_page import brute_force_e1_dims, build_e1, check_sn_relations, differential
from src.errors import ResourceGuardError
from src.events import CERTIFICATE, CHECK, EventLogger
from src.series import HodgeSeries
from src.spectral import (ORDERED, UNORDERED, HodgeTable, assemble, d1_vanishes_by_weight,
                          degeneration_certificate, dimension_only_betti, e2,
                          euler_characteristics)


class Pipeline:
    def __init__(self, model, punctures, checks=None, basis_ceiling=None,
                 allow_uncertified=False, verbose=False):
        self.model = model
        self.r = punctures
        self.checks = config.DEFAULT_CHECKS_LEVEL if checks is None else checks
        self.basis_ceiling = basis_ceiling
        self.allow_uncertified = allow_uncertified
        self.verbose = verbose
        self.n = -1  # last computed configuration count
        self.event_logger = EventLogger()
        self.history = []  # one snapshot per computed n
        self.characters = {}  # n -> {(i, p, q): Character}
        self.ordered = HodgeTable(ORDERED, self.space_label("F"))
        self.certificate = degeneration_certificate(model)
        self.event_logger.add_event(None, f"degeneration certificate: {self.certificate.verdict}",
                                    CERTIFICATE, **self.certificate.to_dict())
        for note in self.certificate.notes:
            self.event_logger.add_event(None, note, CERTIFICATE)

    def space_label(self, prefix):
        return f"{prefix}({self.model.name} - {self.r} pts, n)"

    def run(self, n_max):
        """compute every n up to n_max"""
        while self.n < n_max:
            self.tick()
        return self

    def tick(self):
        """progress the pipeline by one configuration count"""
        n = self.n + 1
        page = differential(build_e1(self.model, self.r, n, self.basis_ceiling))
        if self.verbose:
            print(f"n={n}: E1 page with {len(page.elements)} basis elements "
                  f"in {len(page.blocks)} blocks", file=sys.stderr)

        self._run_checks(page)
        e2_page = e2(page)
        table = assemble(page, e2_page, self.certificate, self.allow_uncertified)
        for warning in table.warnings:
            self.event_logger.warn(n, warning)
        self.ordered.merge(table)

        from_e1, from_h = euler_characteristics(page, table)
        self._record_check(n, "euler characteristic", from_e1 == from_h, e1=from_e1, cohomology=from_h)
        if self.checks >= 1:
            ungraded = dimension_only_betti(page)
            self._record_check(n, "betti numbers agree with the hodge grading erased",
                               ungraded == self.ordered.betti(n), ungraded=ungraded)

        characters = all_characters(page, e2_page)
        self.characters[n] = characters
        if self.checks >= 2 and n <= config.PROJECTOR_MAX_N:
            for level, character in sorted(characters.items()):
                projected = projector_rank(page, e2_page, level)
                self._record_check(n, f"projector rank at {level}",
                                   projected == invariant_dims(character),
                                   projector=projected, character=invariant_dims(character))

        self.n = n
        self._save_history_snapshot(page, e2_page)
        return page

    def _run_checks(self, page):
        n = page.n
        if d1_vanishes_by_weight(self.model):
            self._record_check(n, "d1 vanishes by weight", all(m.is_zero() for m in page.d1.values()))
        if self.checks < 1:
            return

        mobius = page.lattice.mobius()
        mismatched = [F.label() for F in page.lattice if len(page.os.basis(F)) != abs(mobius[F])]
        self._record_check(n, "nbc counts equal mobius numbers", not mismatched, strata=mismatched)
        off_formula = [F.label() for F in page.lattice if mobius[F] != mobius_number(F)]
        self._record_check(n, "mobius recursion matches the product formula", not off_formula,
                           strata=off_formula)

        failures = check_sn_relations(page)
        self._record_check(n, "S_n relations and d1 commutation", not failures, failures=failures[:10])

        try:
            oracle = brute_force_e1_dims(self.model, self.r, n)
            self._record_check(n, "E1 dims match the quotient presentation",
                               oracle == page.hodge_dims())
        except ResourceGuardError as e:
            self.event_logger.add_event(n, f"E1 oracle skipped: {e}")

        if self.checks >= 2:
            try:
                oracle = brute_force_os_dims(n, self.r)
                self._record_check(n, "OS dims match the exterior quotient",
                                   oracle == page.os.dims_by_rank())
            except ResourceGuardError as e:
                self.event_logger.add_event(n, f"OS oracle skipped: {e}")

    def _record_check(self, n, name, passed, **data):
        passed = bool(passed)
        self.event_logger.add_event(n, f"{name}: {'ok' if passed else 'FAILED'}", CHECK,
                                    passed=passed, **data)
        if not passed:
            print(f"Warning: check failed at n={n}: {name}", file=sys.stderr)

    def _save_history_snapshot(self, page, e2_page):
        """save a summary of the page just computed"""
        snapshot = {
            "n": page.n,
            "e1_dims": {f"{i},{j}": dim for (i, j), dim in page.dims().items()},
            "e2_dims": {f"{i},{j}": dim for (i, j), dim in e2_page.dims().items()},
            "betti": self.ordered.betti(page.n),
            "basis_size": len(page.elements),
        }
        self.history.append(snapshot)

    # -- results ------------------------------------------------------

    def unordered(self):
        table = unordered_table(self.characters, self.space_label("Conf"))
        table.warnings = list(self.ordered.warnings)
        return table

    def table(self, space):
        if space == ORDERED:
            return self.ordered
        if space == UNORDERED:
            return self.unordered()
        raise ValueError(f"unknown space kind {space!r}")

    def series(self, truncation=None):
        """signed hodge series of Conf^n up to the given truncation"""
        if truncation is None:
            truncation = self.n
        return HodgeSeries.from_table(self.unordered(), truncation)

    def failed_checks(self):
        return self.event_logger.failed_checks()

    def warnings(self):
        return self.event_logger.warnings()

    def get_status(self):
        return {
            "model": self.model.name,
            "punctures": self.r,
            "n": self.n,
            "certificate": self.certificate.verdict,
            "failed_checks": len(self.failed_checks()),
            "warnings": len(self.warnings()),
        }

    def get_history(self):
        return self.history

    def export_history(self, filename):
        """write the history snapshots and the event log as json"""
        try:
            data = {
                "status": self.get_status(),
                "history": self.history,
                "events": self.event_logger.get_all_events(),
            }
            with open(filename, "w") as file:
                json.dump(data, file, indent=config.JSON_INDENT, sort_keys=True)
            return True, filename
        except OSError as e:
            return False, f"cannot export run history: {e}"
