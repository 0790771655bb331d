"""Writes the synthetic analysis corpus and the values the C++ analysis must
reproduce, computed here by direct enumeration.

    python3 tests/oracles/analysis_corpus.py

Output: tests/fixtures/corpus/<group>/<session>/{model.json, events.jsonl}
and tests/fixtures/corpus_expected.json.
"""

import json
import random
import shutil
import statistics
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1] / "fixtures"
MINUTE = 60_000
CREATED = 1_700_000_000_000


class Sim:
    def __init__(self, prompt, cohort):
        self.prompt = prompt
        self.cohort = cohort
        self.phase = "draftingNames"
        self.objects = []
        self.events = []
        self._event("user", "createSession", {"prompt": prompt, "cohort": cohort, "createdAt": CREATED}, 0)

    def count(self):
        n = 0
        for o in self.objects:
            if o["deleted"]:
                continue
            n += 1 + sum(not f["deleted"] for f in o["fields"]) + sum(not m["deleted"] for m in o["methods"])
        return n

    def _event(self, actor, action, payload, t, effect=None):
        e = {"seq": len(self.events), "t": t, "actor": actor, "action": action, "payload": payload,
             "componentCountAfter": self.count()}
        if effect is not None:
            e["effect"] = effect
            e["diagnostics"] = []
        self.events.append(e)

    def _obj(self, name, prov):
        self.objects.append({"name": name, "deleted": False, "provenance": prov, "fields": [], "methods": []})
        return len(self.objects) - 1

    def _field(self, o, name, prim, prov, mult="one"):
        self.objects[o]["fields"].append({"name": name, "type": {"kind": "primitive", "primitive": prim},
                                          "multiplicity": mult, "deleted": False, "provenance": prov})
        return len(self.objects[o]["fields"]) - 1

    def _method(self, o, name, prov):
        self.objects[o]["methods"].append({"name": name, "deleted": False, "provenance": prov})
        return len(self.objects[o]["methods"]) - 1

    def begin(self, t, names):
        added = []
        if self.cohort == "full":
            for n in names:
                added.append({"object": self._obj(n, "synthesized"), "name": n, "provenance": "synthesized"})
        actor = "automation" if self.cohort == "full" else "user"
        self._event(actor, "begin", {}, t, {"phase": self.phase, "added": added})

    def generate(self, t, spec):
        added = []
        for o, (fields, methods) in spec.items():
            for f in fields:
                i = self._field(o, f, "string", "synthesized")
                added.append({"object": o, "field": i, "name": f,
                              "type": {"kind": "primitive", "primitive": "string"},
                              "multiplicity": "one", "provenance": "synthesized"})
            for m in methods:
                i = self._method(o, m, "synthesized")
                added.append({"object": o, "method": i, "name": m, "provenance": "synthesized"})
        self.phase = "fullModel"
        self._event("automation", "generateFieldsAndMethods", {}, t, {"phase": self.phase, "added": added})

    def add_object(self, t, name):
        self._obj(name, "userAdded")
        self._event("user", "addObject", {"name": name}, t)

    def add_field(self, t, o, name):
        self._field(o, name, "int", "userAdded")
        self._event("user", "addField", {"object": o, "name": name,
                                         "type": {"kind": "primitive", "primitive": "int"},
                                         "multiplicity": "one"}, t)

    def delete(self, t, o, field=None, method=None):
        payload = {"object": o}
        if field is not None:
            self.objects[o]["fields"][field]["deleted"] = True
            payload["field"] = field
        elif method is not None:
            self.objects[o]["methods"][method]["deleted"] = True
            payload["method"] = method
        else:
            self.objects[o]["deleted"] = True
        self._event("user", "deleteComponent", payload, t)

    def finish(self, t):
        self.phase = "finished"
        self._event("user", "finish", {"finishedAt": CREATED + t}, t)

    def model(self):
        return {"prompt": self.prompt, "phase": self.phase, "objects": self.objects}


BASE = ["customer", "reservation", "order", "menu item"]
FIELD_POOL = ["name", "phone number", "address", "time", "total", "price"]
METHOD_POOL = ["create", "cancel", "update", "pay"]


def synthesis_session(rng, has_waiter, minutes):
    s = Sim("restaurant", "full")
    names = BASE + (["waiter"] if has_waiter else []) + rng.sample(["table", "menu", "bill"], 1)
    begin_t = rng.randint(5, 40) * 1000
    s.begin(begin_t, names)
    spec = {}
    for o in range(len(s.objects)):
        spec[o] = (rng.sample(FIELD_POOL, rng.randint(1, 3)), rng.sample(METHOD_POOL, rng.randint(0, 2)))
    t = begin_t + 30_000
    s.generate(t, spec)
    for _ in range(rng.randint(1, 4)):
        t += rng.randint(10, 90) * 1000
        o = rng.randrange(len(s.objects))
        choice = rng.random()
        obj = s.objects[o]
        if choice < 0.3 and obj["fields"]:
            s.delete(t, o, field=rng.randrange(len(obj["fields"])))
        elif choice < 0.5 and obj["methods"]:
            s.delete(t, o, method=rng.randrange(len(obj["methods"])))
        elif choice < 0.6 and s.objects[o]["name"] != "waiter":
            s.delete(t, o)
        else:
            s.add_field(t, o, "note %d" % t)
    s.finish(begin_t + int(minutes * MINUTE))
    return s


def control_session(rng, waiter, minutes):
    s = Sim("restaurant", "controlNoSynthesis")
    begin_t = rng.randint(5, 40) * 1000
    s.begin(begin_t, [])
    t = begin_t
    names = rng.sample(BASE, rng.randint(2, 4)) + (["waiter"] if waiter else [])
    for n in names:
        t += rng.randint(20, 60) * 1000
        s.add_object(t, n)
    for o in range(len(s.objects)):
        t += rng.randint(20, 60) * 1000
        s.add_field(t, o, rng.choice(FIELD_POOL))
    if waiter == "deleted":
        t += 1000
        s.delete(t, len(s.objects) - 1)
    s.finish(begin_t + int(minutes * MINUTE))
    return s


def write(group, sid, s):
    d = ROOT / "corpus" / group / sid
    d.mkdir(parents=True)
    (d / "model.json").write_text(json.dumps(s.model(), indent=2) + "\n")
    (d / "events.jsonl").write_text("".join(json.dumps(e, separators=(",", ":")) + "\n" for e in s.events))


def active_names(model, kind):
    out = set()
    for o in model["objects"]:
        if o["deleted"]:
            continue
        if kind == "objects":
            out.add(o["name"])
        else:
            out.update(o["name"] + "." + f["name"] for f in o["fields"] if not f["deleted"])
    return out


def retention(s):
    tally = {"objects": [0, 0], "fields": [0, 0], "methods": [0, 0]}
    for e in s.events:
        for a in e.get("effect", {}).get("added", []):
            if a["provenance"] != "synthesized":
                continue
            o = s.objects[a["object"]]
            if "field" in a:
                kind, item = "fields", o["fields"][a["field"]]
            elif "method" in a:
                kind, item = "methods", o["methods"][a["method"]]
            else:
                kind, item = "objects", o
            tally[kind][1] += 1
            alive = not item["deleted"] and not o["deleted"]
            if alive and item["provenance"] == "synthesized":
                tally[kind][0] += 1
    return tally


def main():
    rng = random.Random(5)
    shutil.rmtree(ROOT / "corpus", ignore_errors=True)
    groups = {"control": [], "synthesis": []}
    # waiter in 4 of 6 synthesis models and 1 of 5 control models
    synth_minutes = [14.5, 12.25, 16.0, 13.75, 15.5, 14.4]
    for i, (w, m) in enumerate(zip([True, False, True, True, False, True], synth_minutes)):
        groups["synthesis"].append(("s%02d" % i, synthesis_session(rng, w, m)))
    control_minutes = [11.0, 12.5, 13.25, 10.75, 12.5]
    for i, (w, m) in enumerate(zip([False, True, "deleted", False, False], control_minutes)):
        groups["control"].append(("c%02d" % i, control_session(rng, w, m)))

    expected = {"models": {}, "frequency": {"objects": {}, "fields": {}}, "duration": {}, "retention": {}}
    for g, sessions in groups.items():
        expected["models"][g] = len(sessions)
        for sid, s in sessions:
            write(g, sid, s)
            expected["retention"][g + "/" + sid] = retention(s)
        durations = []
        for _, s in sessions:
            begin = next(e["t"] for e in s.events if e["action"] == "begin")
            finish = next(e["t"] for e in s.events if e["action"] == "finish")
            durations.append((finish - begin) / MINUTE)
        expected["duration"][g] = {"sessions": len(durations), "mean": statistics.fmean(durations),
                                   "sdPopulation": statistics.pstdev(durations),
                                   "sdSample": statistics.stdev(durations)}
    for kind in ("objects", "fields"):
        every = set()
        for sessions in groups.values():
            for _, s in sessions:
                every |= active_names(s.model(), kind)
        for name in sorted(every):
            row = {}
            for g, sessions in groups.items():
                hits = sum(name in active_names(s.model(), kind) for _, s in sessions)
                row[g] = [hits, hits / len(sessions)]
            expected["frequency"][kind][name] = row
    (ROOT / "corpus_expected.json").write_text(json.dumps(expected, indent=2, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
