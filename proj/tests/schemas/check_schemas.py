"""Validate fixture files and CLI reports against the JSON schemas in docs/."""
import json
import pathlib
import subprocess
import sys

from jsonschema import Draft202012Validator
from referencing import Registry, Resource

cli, root = sys.argv[1], pathlib.Path(sys.argv[2])
docs, data = root / "docs", root / "tests" / "data"

schemas = {p.name: json.loads(p.read_text()) for p in docs.glob("*.schema.json")}
registry = Registry().with_resources(
    (name, Resource.from_contents(body)) for name, body in schemas.items())


def errors(schema, doc):
    Draft202012Validator.check_schema(schemas[schema])
    return list(Draft202012Validator(schemas[schema], registry=registry).iter_errors(doc))


def check(schema, doc, label):
    found = errors(schema, doc)
    for e in found:
        print(f"{label}: {'/'.join(map(str, e.path))}: {e.message}")
    return not found


def rejects(schema, doc, label):
    if errors(schema, doc):
        return True
    print(f"{label}: accepted but should be rejected")
    return False


def report(*args):
    out = subprocess.run([cli, *args], check=True, capture_output=True, text=True).stdout
    return json.loads(out)


ok = True
for name in ("two_plan_plans.json", "infra_plans.json"):
    ok &= check("plan-spec.schema.json", json.loads((data / name).read_text()), name)
ok &= rejects("plan-spec.schema.json", {"config": {"w_c": 1}}, "no plans")
ok &= rejects("plan-spec.schema.json", {"plans": []}, "empty plans")
ok &= rejects("config.schema.json", {"bogus": 1}, "unknown config field")

two_plan = ["--data", str(data / "two_plan_responses.csv"), "--plans", str(data / "two_plan_plans.json")]
infra = ["--data", str(data / "infra_responses.csv"), "--plans", str(data / "infra_plans.json")]
runs = {
    "rank": report("rank", *two_plan),
    "gonogo": report("gonogo", *two_plan),
    "sweep": report("sweep", *two_plan, "--increment", "0.1"),
    "montecarlo": report("montecarlo", *two_plan, "--draws", "300"),
    "infra": report("infra", *infra, "--draws", "200"),
    "infra without draws": report("infra", *infra),
    "samplesize": report("samplesize"),
}
for label, doc in runs.items():
    ok &= check("report.schema.json", doc, label)
ok &= check("config.schema.json", runs["rank"]["inputs"]["config"], "effective config")

print("schemas OK" if ok else "schema check FAILED")
sys.exit(0 if ok else 1)
