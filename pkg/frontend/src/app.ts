import { ApiClient } from "./api.js";
import {
  isSubmittable,
  renderComparison,
  renderError,
  renderInventoryOptions,
  renderResults,
} from "./render.js";
import type { Method } from "./types.js";

/** Wires the input form to the API; cancels in-flight requests on resubmit. */
export function initApp(root: HTMLElement, api: ApiClient = new ApiClient()): void {
  root.innerHTML = `
    <form id="wsd-form">
      <textarea id="wsd-text" rows="5" placeholder="Enter text to disambiguate"></textarea>
      <div class="controls">
        <select id="wsd-method">
          <option value="sparse">sparse</option>
          <option value="dense">dense</option>
        </select>
        <select id="wsd-inventory"></select>
        <label><input type="checkbox" id="wsd-compare"> compare methods</label>
        <button type="submit" id="wsd-submit" disabled>Disambiguate</button>
      </div>
    </form>
    <div id="wsd-status"></div>
    <div id="wsd-results"></div>
  `;

  const form = root.querySelector<HTMLFormElement>("#wsd-form")!;
  const textarea = root.querySelector<HTMLTextAreaElement>("#wsd-text")!;
  const methodSelect = root.querySelector<HTMLSelectElement>("#wsd-method")!;
  const inventorySelect = root.querySelector<HTMLSelectElement>("#wsd-inventory")!;
  const compareToggle = root.querySelector<HTMLInputElement>("#wsd-compare")!;
  const submit = root.querySelector<HTMLButtonElement>("#wsd-submit")!;
  const status = root.querySelector<HTMLElement>("#wsd-status")!;
  const results = root.querySelector<HTMLElement>("#wsd-results")!;

  let inFlight: AbortController | null = null;

  const syncSubmit = () => {
    submit.disabled = !isSubmittable(textarea.value) || inventorySelect.disabled;
  };

  const loadInventories = async () => {
    try {
      renderInventoryOptions(inventorySelect, await api.inventories());
      status.textContent = "";
    } catch (error) {
      renderInventoryOptions(inventorySelect, []);
      renderError(status, `service unreachable: ${String(error)}`, loadInventories);
    }
    syncSubmit();
  };

  textarea.addEventListener("input", syncSubmit);

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    if (submit.disabled) return;
    inFlight?.abort();
    inFlight = new AbortController();
    const signal = inFlight.signal;
    const text = textarea.value;
    const inventory = inventorySelect.value;

    if (compareToggle.checked) {
      const call = (method: Method) =>
        api.disambiguate(text, method, inventory, signal).then(
          (payload) => ({ payload }),
          (error: unknown) =>
            error instanceof DOMException && error.name === "AbortError"
              ? Promise.reject(error)
              : { error: String(error) }
        );
      Promise.all([call("sparse"), call("dense")])
        .then(([sparse, dense]) => renderComparison(results, sparse, dense))
        .catch(() => undefined /* aborted */);
      return;
    }

    api
      .disambiguate(text, methodSelect.value as Method, inventory, signal)
      .then((payload) => renderResults(results, payload))
      .catch((error: unknown) => {
        if (error instanceof DOMException && error.name === "AbortError") return;
        renderError(results, String(error));
      });
  });

  void loadInventories();
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  initApp(document.getElementById("app")!);
}
