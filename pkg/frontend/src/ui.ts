/**
 * DOM chrome: mode toolbar, object palette, constraint panel, scale slider,
 * remove-confirmation modal, toast, and export/download plumbing.  Pure DOM —
 * the 3D viewport lives elsewhere.
 */

import { ObjectKind, statementText } from "./protocol";
import { EDIT_MODES, EditMode, EditorState, PALETTE, SCALE_MAX, SCALE_MIN } from "./state";

export interface UiCallbacks {
  onModeSelect(mode: EditMode): void;
  onPaletteSelect(kind: ObjectKind): void;
  onObjectSelect(id: string | null): void;
  onScaleCommit(value: number): void;
  onRemoveRequest(): void;
  onRemoveConfirm(): void;
  onRemoveCancel(): void;
  onGenerate(): void;
  onExport(): void;
}

export interface UiHandles {
  root: HTMLElement;
  refresh(): void;
  showToast(message: string): void;
  openRemoveModal(objectId: string): void;
  closeRemoveModal(): void;
  isRemoveModalOpen(): boolean;
}

export function buildUi(root: HTMLElement, state: EditorState, callbacks: UiCallbacks): UiHandles {
  root.innerHTML = `
    <header id="toolbar">
      <nav id="mode-buttons" aria-label="Edit mode"></nav>
      <div id="actions">
        <button id="remove-selected" type="button" hidden>Remove selected…</button>
        <button id="generate-button" type="button">Generate</button>
        <button id="export-button" type="button">Export CSV</button>
      </div>
    </header>
    <aside id="palette" aria-label="Object palette"></aside>
    <main id="viewport-host"></main>
    <aside id="panel">
      <h2>Constraints</h2>
      <div id="object-chips"></div>
      <div id="selection-label"></div>
      <ul id="constraint-list"></ul>
      <div id="scale-controls" hidden>
        <label for="scale-slider">Scale</label>
        <input id="scale-slider" type="range" min="${SCALE_MIN}" max="${SCALE_MAX}" step="0.01" value="1" />
        <output id="scale-value">1.00</output>
      </div>
    </aside>
    <div id="modal-backdrop" hidden>
      <div id="confirm-modal" role="dialog" aria-modal="true" aria-labelledby="confirm-text">
        <p id="confirm-text"></p>
        <button id="confirm-remove" type="button">Remove</button>
        <button id="cancel-remove" type="button">Keep it</button>
      </div>
    </div>
    <div id="toast" role="status" hidden></div>
  `;

  const query = <T extends HTMLElement>(selector: string): T => {
    const found = root.querySelector<T>(selector);
    if (!found) throw new Error(`missing ui element ${selector}`);
    return found;
  };

  const modeButtons = query<HTMLElement>("#mode-buttons");
  for (const mode of EDIT_MODES) {
    const button = document.createElement("button");
    button.type = "button";
    button.dataset.mode = mode;
    button.textContent = mode[0].toUpperCase() + mode.slice(1);
    button.addEventListener("click", () => callbacks.onModeSelect(mode));
    modeButtons.appendChild(button);
  }

  const palette = query<HTMLElement>("#palette");
  for (const group of ["structures", "items"] as const) {
    const heading = document.createElement("h3");
    heading.textContent = group === "structures" ? "Structures" : "Items";
    palette.appendChild(heading);
    const list = document.createElement("div");
    list.dataset.group = group;
    for (const entry of PALETTE.filter((candidate) => candidate.group === group)) {
      const button = document.createElement("button");
      button.type = "button";
      button.dataset.kind = entry.kind;
      button.textContent = entry.label;
      button.addEventListener("click", () => callbacks.onPaletteSelect(entry.kind));
      list.appendChild(button);
    }
    palette.appendChild(list);
  }

  const slider = query<HTMLInputElement>("#scale-slider");
  const sliderValue = query<HTMLOutputElement>("#scale-value");
  slider.addEventListener("input", () => {
    sliderValue.textContent = Number(slider.value).toFixed(2);
  });
  slider.addEventListener("change", () => callbacks.onScaleCommit(Number(slider.value)));

  query<HTMLButtonElement>("#remove-selected").addEventListener("click", () => callbacks.onRemoveRequest());
  query<HTMLButtonElement>("#confirm-remove").addEventListener("click", () => callbacks.onRemoveConfirm());
  query<HTMLButtonElement>("#cancel-remove").addEventListener("click", () => callbacks.onRemoveCancel());
  query<HTMLButtonElement>("#generate-button").addEventListener("click", () => callbacks.onGenerate());
  query<HTMLButtonElement>("#export-button").addEventListener("click", () => callbacks.onExport());

  let toastTimer: ReturnType<typeof setTimeout> | undefined;

  const handles: UiHandles = {
    root,
    refresh,
    showToast(message: string) {
      const toast = query<HTMLElement>("#toast");
      toast.textContent = message;
      toast.hidden = false;
      clearTimeout(toastTimer);
      toastTimer = setTimeout(() => {
        toast.hidden = true;
      }, 4000);
    },
    openRemoveModal(objectId: string) {
      query<HTMLElement>("#confirm-text").textContent = `Remove ${objectId}? All constraints linked to it will be deleted.`;
      query<HTMLElement>("#modal-backdrop").hidden = false;
    },
    closeRemoveModal() {
      query<HTMLElement>("#modal-backdrop").hidden = true;
    },
    isRemoveModalOpen() {
      return !query<HTMLElement>("#modal-backdrop").hidden;
    },
  };

  function refresh(): void {
    for (const button of modeButtons.querySelectorAll<HTMLButtonElement>("button")) {
      button.classList.toggle("active", button.dataset.mode === state.mode);
      button.setAttribute("aria-pressed", String(button.dataset.mode === state.mode));
    }
    for (const button of palette.querySelectorAll<HTMLButtonElement>("button")) {
      button.classList.toggle("active", button.dataset.kind === state.paletteSelection);
    }

    const chips = query<HTMLElement>("#object-chips");
    chips.innerHTML = "";
    const allChip = document.createElement("button");
    allChip.type = "button";
    allChip.dataset.object = "";
    allChip.textContent = "All";
    allChip.classList.toggle("active", state.selectedObject === null);
    allChip.addEventListener("click", () => callbacks.onObjectSelect(null));
    chips.appendChild(allChip);
    for (const object of state.scene.objects) {
      const chip = document.createElement("button");
      chip.type = "button";
      chip.dataset.object = object.id;
      chip.textContent = object.id;
      chip.classList.toggle("active", state.selectedObject === object.id);
      chip.addEventListener("click", () => callbacks.onObjectSelect(object.id));
      chips.appendChild(chip);
    }

    const selectionLabel = query<HTMLElement>("#selection-label");
    selectionLabel.textContent = state.selectedObject
      ? `Rows mentioning ${state.selectedObject}`
      : "All constraints";

    const list = query<HTMLElement>("#constraint-list");
    list.innerHTML = "";
    for (const row of state.panelRows()) {
      const item = document.createElement("li");
      item.dataset.subject = row.subject;
      if (row.target) item.dataset.target = row.target;
      item.textContent = statementText(row);
      list.appendChild(item);
    }

    const scaleControls = query<HTMLElement>("#scale-controls");
    const scaleActive = state.mode === "scale" && state.selectedObject !== null;
    scaleControls.hidden = !scaleActive;
    if (scaleActive) {
      slider.value = String(state.selectedObjectScale());
      sliderValue.textContent = state.selectedObjectScale().toFixed(2);
    }

    query<HTMLButtonElement>("#remove-selected").hidden = !(
      state.mode === "remove" && state.selectedObject !== null
    );
  }

  state.subscribe(refresh);
  refresh();
  return handles;
}

/** Hand the CSV text to the browser as a download; returns the exact blob. */
export function downloadCsv(csvText: string, filename = "constraints.csv"): Blob {
  const blob = new Blob([csvText], { type: "text/csv" });
  if (typeof URL !== "undefined" && typeof URL.createObjectURL === "function") {
    const href = URL.createObjectURL(blob);
    const anchor = document.createElement("a");
    anchor.href = href;
    anchor.download = filename;
    anchor.click();
    URL.revokeObjectURL(href);
  }
  return blob;
}
