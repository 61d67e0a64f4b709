import { readFileSync } from "node:fs";

import { describe, expect, test } from "vitest";

import { parseRecord, parseRecords } from "../src/certificates.js";
import { crossCheck, recompute } from "../src/crosscheck.js";
import { parseVerdicts } from "../src/verdicts.js";

function dataFile(name: string): string {
  return readFileSync(new URL(`../../data/${name}`, import.meta.url), "utf8");
}

test("recompute fills every verdict field from the claim", () => {
  const v = recompute(parseRecord("circulant 5 : 1 # 3 3 pentagon"));
  expect(v).toMatchObject({
    order: 5, k: 3, j: 3, clique0: 2, clique1: 2,
    pass_as_given: true, pass_swapped: true, passes: true,
    label: "pentagon",
  });
  expect(() => recompute(parseRecord("circulant 5 : 1"))).toThrow(/claim/);
});

describe("tamper detection", () => {
  const certs = parseRecords(
    "circulant 5 : 1 # 3 3 a\ncirculant 6 : 1 # 3 3 b\n");
  const clean = certs.map(recompute);

  test("clean round trip agrees", () => {
    const doc = JSON.stringify({ verdicts: clean });
    const res = crossCheck(certs, parseVerdicts(doc));
    expect(res.checked).toBe(2);
    expect(res.disagreements).toEqual([]);
  });

  test("edited clique number is flagged", () => {
    const bent = clean.map((v) => ({ ...v }));
    bent[1].clique0 += 1;
    const res = crossCheck(certs, parseVerdicts(
      JSON.stringify({ verdicts: bent })));
    const fields = res.disagreements.map((d) => d.field);
    expect(fields).toContain("clique0");
  });

  test("flipped pass flag is flagged", () => {
    const bent = clean.map((v) => ({ ...v }));
    bent[0].passes = false;
    const res = crossCheck(certs, parseVerdicts(
      JSON.stringify({ verdicts: bent })));
    expect(res.disagreements.some((d) => d.field === "passes")).toBe(true);
  });

  test("label mismatch short-circuits the record", () => {
    const bent = clean.map((v) => ({ ...v }));
    bent[0].label = "elsewhere";
    const res = crossCheck(certs, parseVerdicts(
      JSON.stringify({ verdicts: bent })));
    expect(res.checked).toBe(1);
    expect(res.disagreements[0].field).toBe("label");
  });

  test("count mismatch is its own disagreement", () => {
    const res = crossCheck(certs.slice(0, 1), parseVerdicts(
      JSON.stringify({ verdicts: clean })));
    expect(res.disagreements.some((d) => d.field === "count")).toBe(true);
  });
});

describe("bundled corpus agreement", () => {
  for (const name of ["constructor", "largest_cyclic"]) {
    test(`${name} certificates match their published verdicts`, () => {
      const certs = parseRecords(dataFile(`${name}_certs.txt`));
      const verdicts = parseVerdicts(dataFile(`${name}_verdicts.json`));
      const res = crossCheck(certs, verdicts);
      expect(res.checked).toBe(certs.length);
      expect(res.disagreements).toEqual([]);
    }, 900_000);
  }
});
