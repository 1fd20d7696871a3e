import type { Bounds, SearchRequest } from "./api.js";

export class FormError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "FormError";
  }
}

export interface FormElements {
  form: HTMLFormElement;
  fields: HTMLFieldSetElement;
  dominating: HTMLSelectElement;
  subs: HTMLSelectElement[];
  rangeFrom: HTMLInputElement;
  rangeTo: HTMLInputElement;
  rangeFromNote: HTMLElement;
  rangeToNote: HTMLElement;
  count: HTMLInputElement;
  submit: HTMLButtonElement;
  error: HTMLElement;
  banner: HTMLElement;
  status: HTMLElement;
  resultsTable: HTMLTableElement;
  resultsBody: HTMLTableSectionElement;
}

function byId<T extends HTMLElement>(root: ParentNode, id: string): T {
  const el = root.querySelector(`#${id}`);
  if (!el) {
    throw new Error(`missing element #${id}`);
  }
  return el as T;
}

export function getFormElements(root: ParentNode): FormElements {
  return {
    form: byId(root, "search-form"),
    fields: byId(root, "form-fields"),
    dominating: byId(root, "dominating"),
    subs: [1, 2, 3, 4].map((n) => byId<HTMLSelectElement>(root, `sub-${n}`)),
    rangeFrom: byId(root, "range-from"),
    rangeTo: byId(root, "range-to"),
    rangeFromNote: byId(root, "range-from-note"),
    rangeToNote: byId(root, "range-to-note"),
    count: byId(root, "count"),
    submit: byId(root, "search-button"),
    error: byId(root, "form-error"),
    banner: byId(root, "banner"),
    status: byId(root, "status"),
    resultsTable: byId(root, "results"),
    resultsBody: byId(root, "results-body"),
  };
}

function addOption(select: HTMLSelectElement, value: string, label: string): void {
  const option = select.ownerDocument.createElement("option");
  option.value = value;
  option.textContent = label;
  select.appendChild(option);
}

export function populateTermOptions(els: FormElements, terms: string[]): void {
  addOption(els.dominating, "", "select a term");
  for (const name of terms) {
    addOption(els.dominating, name, name);
  }
  for (const sub of els.subs) {
    addOption(sub, "", "none");
    for (const name of terms) {
      addOption(sub, name, name);
    }
  }
}

export function annotateBounds(els: FormElements, bounds: Bounds): void {
  // Full precision: rounding the prefill could push the extreme pages
  // outside the closed range the server applies.
  els.rangeFrom.value = String(bounds.min);
  els.rangeTo.value = String(bounds.max);
  els.rangeFromNote.textContent = `(Minimum Relevance Value ${bounds.min})`;
  els.rangeToNote.textContent = `(Maximum Relevance Value ${bounds.max})`;
}

/** Disable every term that is already taken by one of the other dropdowns. */
export function syncDisabledOptions(els: FormElements): void {
  const selects = [els.dominating, ...els.subs];
  for (const select of selects) {
    const taken = new Set(
      selects.filter((s) => s !== select && s.value).map((s) => s.value),
    );
    for (const option of Array.from(select.options)) {
      option.disabled = option.value !== "" && taken.has(option.value);
    }
  }
}

/** Keep range_from <= range_to by clamping the field that was just edited. */
export function enforceRangeOrder(els: FormElements, edited: "from" | "to"): void {
  const from = Number(els.rangeFrom.value);
  const to = Number(els.rangeTo.value);
  if (els.rangeFrom.value === "" || els.rangeTo.value === "" || from <= to) {
    return;
  }
  if (edited === "from") {
    els.rangeFrom.value = els.rangeTo.value;
  } else {
    els.rangeTo.value = els.rangeFrom.value;
  }
}

/**
 * Turn the current form state into a request body, or throw FormError.
 * Mirrors the server-side rules so an invalid request is never sent.
 */
export function readRequest(els: FormElements): SearchRequest {
  const dominating = els.dominating.value;
  if (!dominating) {
    throw new FormError("dominating term is mandatory");
  }

  const subs = els.subs.map((s) => s.value).filter((v) => v !== "");
  const distinct = new Set(subs);
  if (distinct.size !== subs.length || distinct.has(dominating)) {
    throw new FormError("sub-dominating terms must be distinct");
  }

  const count = Number(els.count.value);
  if (!Number.isInteger(count) || count < 1) {
    throw new FormError("count must be a positive integer");
  }

  const request: SearchRequest = { dominating, count };
  if (subs.length > 0) {
    request.sub_dominating = subs;
  }

  const fromRaw = els.rangeFrom.value;
  const toRaw = els.rangeTo.value;
  if (fromRaw !== "" && toRaw !== "") {
    const from = Number(fromRaw);
    const to = Number(toRaw);
    if (Number.isNaN(from) || Number.isNaN(to)) {
      throw new FormError("relevance range must be numeric");
    }
    if (from > to) {
      throw new FormError(`relevance range is inverted: ${from} > ${to}`);
    }
    request.range = { from, to };
  } else if (fromRaw !== "" || toRaw !== "") {
    throw new FormError("provide both ends of the relevance range, or neither");
  }

  return request;
}

export function showFormError(els: FormElements, message: string): void {
  els.error.textContent = message;
  els.error.hidden = false;
}

export function clearFormError(els: FormElements): void {
  els.error.textContent = "";
  els.error.hidden = true;
}
