import { ApiClient } from "./api.js";
import { fmt12 } from "./format.js";
import { buildScatter, renderScatterSvg } from "./scatter.js";
import { buildSpectrum, renderSpectrumSvg } from "./spectrum.js";
import { ExplorerStore } from "./state.js";
import type { Strategy } from "./types.js";

const DEV = new URLSearchParams(location.search).has("dev");
const api = new ApiClient("", undefined, DEV);
const store = new ExplorerStore();

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function showError(message: string): void {
  el("error").textContent = message;
}

async function onUpload(): Promise<void> {
  showError("");
  const dataInput = el<HTMLInputElement>("data-file");
  const metaInput = el<HTMLInputElement>("metadata-file");
  const data = dataInput.files?.[0];
  if (!data) {
    showError("choose a data file");
    return;
  }
  const metadata = metaInput.files?.[0];
  try {
    const summary = await api.uploadDataset(data, metadata);
    const dataText = await data.text();
    const metaText = metadata ? await metadata.text() : undefined;
    store.setDataset(summary, dataText, metaText);
  } catch (err) {
    showError(String(err));
  }
}

function readForm(): void {
  store.form.strategy = el<HTMLSelectElement>("strategy").value as Strategy;
  store.form.groupColumn = el<HTMLSelectElement>("group-column").value;
  const kRaw = el<HTMLInputElement>("knn-k").value;
  store.form.k = kRaw === "" ? null : Number(kRaw);
  store.form.orderColumn = el<HTMLSelectElement>("order-column").value;
  store.form.seriesColumn = el<HTMLSelectElement>("series-column").value;
  store.form.volumeWeights = el<HTMLInputElement>("volume-weights").checked;
  store.form.center = el<HTMLInputElement>("center").checked;
}

async function onFit(): Promise<void> {
  showError("");
  readForm();
  const problem = store.validateForm();
  if (problem !== null) {
    showError(problem); // inline validation: no request leaves the page
    return;
  }
  try {
    await store.refit(api);
  } catch (err) {
    showError(String(err));
  }
}

function annotationOptions(): string {
  const names = store.dataset?.annotation_names ?? [];
  return ['<option value=""></option>']
    .concat(names.map((n) => `<option value="${n}">${n}</option>`))
    .join("");
}

function render(): void {
  const ds = store.dataset;
  el("dataset-summary").textContent = ds
    ? `dataset ${ds.dataset_id.slice(0, 8)}: ${ds.p} variables x ${ds.n} samples`
    : "no dataset loaded";
  if (ds) {
    for (const id of ["group-column", "order-column", "series-column", "color-by"]) {
      const select = el<HTMLSelectElement>(id);
      const current = select.value;
      select.innerHTML = annotationOptions();
      select.value = current;
    }
  }

  const model = store.activeModel();
  const previous = store.previousModel();
  el("model-list").innerHTML = store.models
    .map(
      (m) =>
        `<li${m.modelId === store.activeModelId ? ' class="active"' : ""}>` +
        `${m.label} (rank ${m.eigenvalues.length})` +
        (m.warnings.length ? ` <em>${m.warnings.length} warning(s)</em>` : "") +
        `</li>`,
    )
    .join("");

  if (model) {
    el("spectrum").innerHTML = renderSpectrumSvg(
      buildSpectrum(model.eigenvalues, model.traceTotal),
    );
    el("spectrum-prev").innerHTML = previous
      ? renderSpectrumSvg(buildSpectrum(previous.eigenvalues, previous.traceTotal))
      : "";
    el("export-link").setAttribute("href", api.exportUrl(model.modelId));
  }

  const report = store.activeReport;
  if (report) {
    // cumulative explained values displayed verbatim from the payload
    el("explained").innerHTML = report.explained
      .map((frac, k) => `<tr><td>PM${k + 1}</td><td>${frac}</td></tr>`)
      .join("") + `<tr><td>cumulative</td><td>${report.cumulative}</td></tr>`;
    el("residual").textContent = `residual second moment: ${fmt12(report.residual)}`;

    const axisSelectors = [el<HTMLSelectElement>("axis-i"), el<HTMLSelectElement>("axis-j")];
    for (const sel of axisSelectors) {
      const current = sel.value;
      sel.innerHTML = report.explained
        .map((_, k) => `<option value="${k}">PM${k + 1}</option>`)
        .join("");
      if (current !== "" && Number(current) < report.s) sel.value = current;
    }
    axisSelectors[0]!.value = String(store.view.axisI);
    axisSelectors[1]!.value = String(store.view.axisJ);

    const data = buildScatter(
      report,
      store.view.axisI,
      store.view.axisJ,
      store.view.colorBy,
      store.annotations,
    );
    el("scatter").innerHTML = renderScatterSvg(data);
  }
}

function wire(): void {
  el("upload").addEventListener("click", () => void onUpload());
  el("fit").addEventListener("click", () => void onFit());
  el("strategy").addEventListener("change", () => {
    readForm();
    for (const [id, strategies] of [
      ["groupby-params", ["groupby"]],
      ["knn-params", ["knn"]],
      ["chain-params", ["chain"]],
    ] as const) {
      el(id).style.display = strategies.includes(store.form.strategy as never)
        ? ""
        : "none";
    }
  });
  el("axis-i").addEventListener("change", () => {
    store.view.axisI = Number(el<HTMLSelectElement>("axis-i").value);
    render();
  });
  el("axis-j").addEventListener("change", () => {
    store.view.axisJ = Number(el<HTMLSelectElement>("axis-j").value);
    render();
  });
  el("color-by").addEventListener("change", () => {
    const value = el<HTMLSelectElement>("color-by").value;
    store.view.colorBy = value === "" ? null : value;
    render();
  });
  store.onChange(render);
}

wire();
render();
