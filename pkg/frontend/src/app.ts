import { ApiError, fetchBounds, fetchTerms, postSearch } from "./api.js";
import {
  FormError,
  clearFormError,
  enforceRangeOrder,
  getFormElements,
  populateTermOptions,
  readRequest,
  showFormError,
  syncDisabledOptions,
  annotateBounds,
  type FormElements,
} from "./form.js";
import { renderResults } from "./results.js";

function showBanner(els: FormElements, message: string): void {
  els.banner.textContent = message;
  els.banner.hidden = false;
  els.fields.disabled = true;
}

function wireInputs(els: FormElements): void {
  for (const select of [els.dominating, ...els.subs]) {
    select.addEventListener("change", () => syncDisabledOptions(els));
  }
  els.rangeFrom.addEventListener("change", () => enforceRangeOrder(els, "from"));
  els.rangeTo.addEventListener("change", () => enforceRangeOrder(els, "to"));
}

function wireSubmit(els: FormElements): void {
  els.form.addEventListener("submit", (event) => {
    event.preventDefault();
    if (els.submit.disabled) {
      return; // a search is already in flight
    }
    clearFormError(els);

    let request;
    try {
      request = readRequest(els);
    } catch (err) {
      if (err instanceof FormError) {
        showFormError(els, err.message);
        return; // invalid form: nothing is sent
      }
      throw err;
    }

    els.submit.disabled = true;
    postSearch(request)
      .then((response) => renderResults(els, response))
      .catch((err) => {
        // Prior results stay on screen; only the error line changes.
        const message = err instanceof ApiError ? err.message : "search failed";
        showFormError(els, message);
      })
      .finally(() => {
        els.submit.disabled = false;
      });
  });
}

/** Fetch terms and bounds, populate the form, and attach all handlers. */
export async function bootstrap(root: ParentNode): Promise<FormElements> {
  const els = getFormElements(root);
  let terms;
  let bounds = null;
  try {
    terms = await fetchTerms();
    try {
      bounds = await fetchBounds();
    } catch (err) {
      // An empty index has no bounds (404); the form still works.
      if (!(err instanceof ApiError && err.status === 404)) {
        throw err;
      }
    }
  } catch {
    showBanner(els, "search service unreachable");
    return els;
  }

  const title = root.querySelector("#app-title");
  if (title) {
    title.textContent = `${terms.domain} search`;
  }
  populateTermOptions(els, terms.terms);
  if (bounds) {
    annotateBounds(els, bounds);
  }
  wireInputs(els);
  wireSubmit(els);
  return els;
}
