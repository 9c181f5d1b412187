"""
reports module for confsplit
renders hodge tables, verification verdicts and the catalog listing as json
or csv; output is deterministic (sorted keys, sorted rows, no timestamps)
"""
import csv
import io
import json
import os
import sys

import config

TABLE_COLUMNS = ["n", "i", "p", "q", "dim"]
# table csv rows also carry the degeneration verdict
CSV_TABLE_COLUMNS = TABLE_COLUMNS + ["certificate"]
VERDICT_COLUMNS = ["identity", "N", "pass", "first_failure"]
CATALOG_COLUMNS = ["entry", "name", "dim_c", "compact", "slope", "betti", "arguments", "description"]


def render_json(document):
    return json.dumps(document, indent=config.JSON_INDENT, sort_keys=True, default=str) + "\n"


def render_csv(columns, rows):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_csv_cell(row[column]) for column in columns])
    return buffer.getvalue()


def _csv_cell(value):
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True, default=str)
    if isinstance(value, bool):
        return "true" if value else "false"
    return "" if value is None else value


def emit(text, out=None):
    """write to --out when given, otherwise stdout"""
    if out:
        folder = os.path.dirname(out)
        if folder:
            os.makedirs(folder, exist_ok=True)
        with open(out, "w") as f:
            f.write(text)
        return out
    sys.stdout.write(text)
    return None


def table_rows(table):
    return [dict(zip(TABLE_COLUMNS, row)) for row in table.rows()]


class Reporter:
    def __init__(self, pipeline):
        self.pipeline = pipeline

    def table_document(self, space):
        """json document of one computed table, certificate status in the header"""
        pipeline = self.pipeline
        table = pipeline.table(space)
        return {
            "schema": config.REPORT_SCHEMA_VERSION,
            "command": "compute",
            "model": pipeline.model.describe(),
            "punctures": pipeline.r,
            "space": table.kind,
            "label": table.label,
            "n_max": pipeline.n,
            "certificate": pipeline.certificate.to_dict(),
            "checks": {
                "level": pipeline.checks,
                "failed": [event["description"] for event in pipeline.failed_checks()],
            },
            "betti": {str(n): table.betti(n) for n in table.ns()},
            "rows": table_rows(table),
            "warnings": pipeline.warnings(),
        }

    def render_table(self, space, output_format):
        if output_format == "csv":
            verdict = self.pipeline.certificate.verdict
            rows = [dict(row, certificate=verdict) for row in table_rows(self.pipeline.table(space))]
            return render_csv(CSV_TABLE_COLUMNS, rows)
        return render_json(self.table_document(space))

    def generate_history_report(self, save_path=None):
        """text summary of the run's event log"""
        summary = self.pipeline.event_logger.generate_history_summary()
        if save_path:
            with open(save_path, "w") as f:
                f.write(summary)
            return save_path
        return summary

    def export_run_data(self, save_path):
        """full run (status, snapshots, events) as json"""
        return self.pipeline.export_history(save_path)


def verify_document(identity, verdicts, header, warnings=()):
    return dict(header, **{
        "schema": config.REPORT_SCHEMA_VERSION,
        "command": "verify",
        "identity": identity,
        "verdicts": [verdict.to_dict() for verdict in verdicts],
        "pass": all(verdict.passed for verdict in verdicts),
        "warnings": list(warnings),
    })


def render_verdicts(identity, verdicts, header, output_format, warnings=()):
    if output_format == "csv":
        rows = [{key: value for key, value in verdict.to_dict().items()} for verdict in verdicts]
        return render_csv(VERDICT_COLUMNS, rows)
    return render_json(verify_document(identity, verdicts, header, warnings))


def render_catalog(entries, output_format):
    if output_format == "csv":
        rows = []
        for entry in entries:
            row = dict(entry)
            row["betti"] = " ".join(str(b) for b in entry["betti"])
            rows.append(row)
        return render_csv(CATALOG_COLUMNS, rows)
    return render_json({
        "schema": config.REPORT_SCHEMA_VERSION,
        "command": "catalog",
        "models": entries,
    })
