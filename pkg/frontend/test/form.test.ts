import { beforeEach, describe, expect, it } from "vitest";

import {
  FormError,
  annotateBounds,
  enforceRangeOrder,
  getFormElements,
  populateTermOptions,
  readRequest,
  syncDisabledOptions,
  type FormElements,
} from "../src/form";
import { TERMS, loadPage } from "./page";

let els: FormElements;

beforeEach(() => {
  loadPage();
  els = getFormElements(document);
  populateTermOptions(els, TERMS);
});

describe("populateTermOptions", () => {
  it("lists every term in every dropdown, after a placeholder", () => {
    for (const select of [els.dominating, ...els.subs]) {
      const options = Array.from(select.options);
      expect(options).toHaveLength(TERMS.length + 1);
      expect(options[0].value).toBe("");
      expect(options.slice(1).map((o) => o.value)).toEqual(TERMS);
    }
  });
});

describe("annotateBounds", () => {
  it("prefills the range and renders both annotations", () => {
    annotateBounds(els, { min: 11.3, max: 489.7 });
    expect(els.rangeFrom.value).toBe("11.3");
    expect(els.rangeTo.value).toBe("489.7");
    expect(els.rangeFromNote.textContent).toBe("(Minimum Relevance Value 11.3)");
    expect(els.rangeToNote.textContent).toBe("(Maximum Relevance Value 489.7)");
  });

  it("keeps full float precision in the prefill", () => {
    annotateBounds(els, { min: 12.850000000000001, max: 74.35000000000001 });
    expect(Number(els.rangeTo.value)).toBe(74.35000000000001);
  });
});

describe("syncDisabledOptions", () => {
  it("disables the dominating pick in every sub dropdown", () => {
    els.dominating.value = "mobile";
    syncDisabledOptions(els);
    for (const sub of els.subs) {
      const option = Array.from(sub.options).find((o) => o.value === "mobile");
      expect(option?.disabled).toBe(true);
    }
  });

  it("disables a sub pick everywhere else, and re-enables on unset", () => {
    els.subs[0].value = "price";
    syncDisabledOptions(els);
    const inDominating = () =>
      Array.from(els.dominating.options).find((o) => o.value === "price");
    const inOtherSub = () =>
      Array.from(els.subs[2].options).find((o) => o.value === "price");
    expect(inDominating()?.disabled).toBe(true);
    expect(inOtherSub()?.disabled).toBe(true);

    els.subs[0].value = "";
    syncDisabledOptions(els);
    expect(inDominating()?.disabled).toBe(false);
    expect(inOtherSub()?.disabled).toBe(false);
  });
});

describe("enforceRangeOrder", () => {
  it("clamps the edited field when the pair inverts", () => {
    els.rangeFrom.value = "10";
    els.rangeTo.value = "80";
    els.rangeFrom.value = "200";
    enforceRangeOrder(els, "from");
    expect(els.rangeFrom.value).toBe("80");

    els.rangeTo.value = "5";
    enforceRangeOrder(els, "to");
    expect(els.rangeTo.value).toBe("80");
  });

  it("leaves a valid pair alone", () => {
    els.rangeFrom.value = "10";
    els.rangeTo.value = "80";
    enforceRangeOrder(els, "from");
    expect(els.rangeFrom.value).toBe("10");
    expect(els.rangeTo.value).toBe("80");
  });
});

describe("readRequest", () => {
  it("requires a dominating term", () => {
    expect(() => readRequest(els)).toThrowError(
      new FormError("dominating term is mandatory"),
    );
  });

  it("builds the full request body", () => {
    els.dominating.value = "mobile";
    els.subs[0].value = "price";
    els.subs[2].value = "color";
    els.rangeFrom.value = "11.3";
    els.rangeTo.value = "489.7";
    els.count.value = "20";
    expect(readRequest(els)).toEqual({
      dominating: "mobile",
      sub_dominating: ["price", "color"],
      range: { from: 11.3, to: 489.7 },
      count: 20,
    });
  });

  it("omits unset subs and an empty range", () => {
    els.dominating.value = "mobile";
    els.rangeFrom.value = "";
    els.rangeTo.value = "";
    expect(readRequest(els)).toEqual({ dominating: "mobile", count: 10 });
  });

  it("rejects duplicate sub selections", () => {
    els.dominating.value = "mobile";
    els.subs[0].value = "price";
    els.subs[1].value = "price";
    expect(() => readRequest(els)).toThrowError(/distinct/);
  });

  it("rejects a non-positive or fractional count", () => {
    els.dominating.value = "mobile";
    for (const bad of ["0", "-3", "2.5", ""]) {
      els.count.value = bad;
      expect(() => readRequest(els)).toThrowError(/positive integer/);
    }
  });

  it("rejects an inverted range set programmatically", () => {
    els.dominating.value = "mobile";
    els.rangeFrom.value = "100";
    els.rangeTo.value = "10";
    expect(() => readRequest(els)).toThrowError(/inverted/);
  });

  it("rejects a half-open range", () => {
    els.dominating.value = "mobile";
    els.rangeFrom.value = "10";
    els.rangeTo.value = "";
    expect(() => readRequest(els)).toThrowError(/both ends/);
  });
});
