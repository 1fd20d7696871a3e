import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { bootstrap } from "../src/app";
import type { SearchResponse } from "../src/api";
import { TERMS, flush, jsonResponse, loadPage } from "./page";

interface StubOptions {
  bounds?: Response;
  search?: (init?: RequestInit) => Response | Promise<Response>;
}

function stubApi(options: StubOptions = {}) {
  const searchBodies: unknown[] = [];
  const fetchMock = vi.fn(async (path: string, init?: RequestInit) => {
    if (path === "/api/terms") {
      return jsonResponse({ domain: "mobile", terms: TERMS });
    }
    if (path === "/api/bounds") {
      return options.bounds ?? jsonResponse({ min: 11.3, max: 489.7 });
    }
    if (path === "/api/search") {
      searchBodies.push(JSON.parse((init?.body as string) ?? "null"));
      if (!options.search) {
        throw new Error("no search stub configured");
      }
      return options.search(init);
    }
    throw new Error(`unexpected fetch ${path}`);
  });
  vi.stubGlobal("fetch", fetchMock);
  return { fetchMock, searchBodies };
}

function submit(form: HTMLFormElement): void {
  form.dispatchEvent(new Event("submit", { cancelable: true }));
}

const THREE_ROWS: SearchResponse = {
  // Deliberately not sorted by relevance: order must survive rendering.
  results: [
    { page_id: "p1", url: "https://x.test/p1", relevance: 9.0, source: "primary" },
    { page_id: "p2", url: "https://x.test/p2", relevance: 6.0, source: "primary" },
    { page_id: "p9", url: "https://x.test/p9", relevance: 74.35, source: "sub1" },
  ],
  requested: 20,
  fulfilled: 3,
};

beforeEach(loadPage);
afterEach(() => {
  vi.unstubAllGlobals();
});

describe("bootstrap", () => {
  it("populates dropdowns and bounds from the API", async () => {
    stubApi();
    const els = await bootstrap(document);

    expect(els.banner.hidden).toBe(true);
    expect(document.querySelector("#app-title")?.textContent).toBe("mobile search");
    expect(els.dominating.options).toHaveLength(TERMS.length + 1);
    for (const sub of els.subs) {
      expect(sub.options).toHaveLength(TERMS.length + 1);
    }
    expect(els.rangeFromNote.textContent).toBe("(Minimum Relevance Value 11.3)");
    expect(els.rangeToNote.textContent).toBe("(Maximum Relevance Value 489.7)");
  });

  it("shows a banner and disables the form when the API is down", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn(async () => {
        throw new TypeError("fetch failed");
      }),
    );
    const els = await bootstrap(document);

    expect(els.banner.hidden).toBe(false);
    expect(els.banner.textContent).toBe("search service unreachable");
    expect(els.fields.disabled).toBe(true);
  });

  it("tolerates missing bounds on an empty index", async () => {
    stubApi({ bounds: jsonResponse({ detail: "index holds no pages" }, 404) });
    const els = await bootstrap(document);

    expect(els.banner.hidden).toBe(true);
    expect(els.rangeFrom.value).toBe("");
    expect(els.dominating.options).toHaveLength(TERMS.length + 1);
  });
});

describe("submitting", () => {
  it("blocks submission without a dominating term and sends nothing", async () => {
    const { fetchMock } = stubApi({ search: () => jsonResponse(THREE_ROWS) });
    const els = await bootstrap(document);

    submit(els.form);
    await flush();

    expect(els.error.hidden).toBe(false);
    expect(els.error.textContent).toBe("dominating term is mandatory");
    const searched = fetchMock.mock.calls.filter(([p]) => p === "/api/search");
    expect(searched).toHaveLength(0);
  });

  it("sends the form state and renders rows in API order", async () => {
    const { searchBodies } = stubApi({ search: () => jsonResponse(THREE_ROWS) });
    const els = await bootstrap(document);

    els.dominating.value = "mobile";
    els.subs[0].value = "price";
    submit(els.form);
    await flush();

    expect(searchBodies).toEqual([
      {
        dominating: "mobile",
        sub_dominating: ["price"],
        range: { from: 11.3, to: 489.7 },
        count: 10,
      },
    ]);
    expect(els.status.textContent).toBe("fulfilled 3 of 20");
    const rows = Array.from(els.resultsBody.querySelectorAll("tr"));
    expect(rows.map((r) => r.cells[1].textContent)).toEqual(["p1", "p2", "p9"]);
    expect(rows.map((r) => r.cells[3].textContent)).toEqual([
      "primary",
      "primary",
      "sub1",
    ]);
    expect(rows[2].cells[0].textContent).toBe("3");
    expect(rows[2].querySelector("a")?.href).toBe("https://x.test/p9");
  });

  it("reports an empty result list", async () => {
    stubApi({
      search: () => jsonResponse({ results: [], requested: 10, fulfilled: 0 }),
    });
    const els = await bootstrap(document);

    els.dominating.value = "mobile";
    submit(els.form);
    await flush();

    expect(els.status.textContent).toBe("no results in range");
    expect(els.resultsTable.hidden).toBe(true);
  });

  it("keeps prior results on an API error", async () => {
    let fail = false;
    stubApi({
      search: () =>
        fail
          ? jsonResponse({ detail: "unknown term 'plasma'" }, 404)
          : jsonResponse(THREE_ROWS),
    });
    const els = await bootstrap(document);
    els.dominating.value = "mobile";

    submit(els.form);
    await flush();
    expect(els.resultsBody.querySelectorAll("tr")).toHaveLength(3);

    fail = true;
    submit(els.form);
    await flush();

    expect(els.error.textContent).toBe("unknown term 'plasma'");
    expect(els.resultsBody.querySelectorAll("tr")).toHaveLength(3);
  });

  it("allows only one in-flight search", async () => {
    let release: (response: Response) => void = () => {};
    stubApi({
      search: () => new Promise<Response>((resolve) => (release = resolve)),
    });
    const els = await bootstrap(document);
    els.dominating.value = "mobile";

    submit(els.form);
    expect(els.submit.disabled).toBe(true);
    submit(els.form);
    await flush();

    const searches = (fetch as ReturnType<typeof vi.fn>).mock.calls.filter(
      ([p]) => p === "/api/search",
    );
    expect(searches).toHaveLength(1);

    release(jsonResponse(THREE_ROWS));
    await flush();
    expect(els.submit.disabled).toBe(false);
    expect(els.resultsBody.querySelectorAll("tr")).toHaveLength(3);
  });
});
