import type { SearchResponse } from "./api.js";
import type { FormElements } from "./form.js";

function trim(value: number): string {
  // Display rounding only; request payloads keep full precision.
  return String(Number(value.toFixed(4)));
}

/** Replace the table with the response rows, in the order the API sent. */
export function renderResults(els: FormElements, response: SearchResponse): void {
  const doc = els.resultsBody.ownerDocument;
  els.status.hidden = false;
  if (response.results.length === 0) {
    els.status.textContent = "no results in range";
    els.resultsBody.replaceChildren();
    els.resultsTable.hidden = true;
    return;
  }

  els.status.textContent = `fulfilled ${response.fulfilled} of ${response.requested}`;
  const rows = response.results.map((entry, i) => {
    const row = doc.createElement("tr");

    const rank = doc.createElement("td");
    rank.textContent = String(i + 1);

    const page = doc.createElement("td");
    const link = doc.createElement("a");
    link.href = entry.url;
    link.textContent = entry.page_id;
    page.appendChild(link);

    const relevance = doc.createElement("td");
    relevance.textContent = trim(entry.relevance);

    const source = doc.createElement("td");
    source.textContent = entry.source;

    row.append(rank, page, relevance, source);
    return row;
  });
  els.resultsBody.replaceChildren(...rows);
  els.resultsTable.hidden = false;
}
