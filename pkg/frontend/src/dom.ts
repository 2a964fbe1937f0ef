import type { CatalogEntry } from "./types.js";
import { tilesFor } from "./gridView.js";
import type { RegistrationWizard } from "./registration.js";
import type { LoginFlow } from "./login.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function tileButton(
  assetPath: string,
  label: string,
  badge: number | null,
  onClick: () => void,
): HTMLButtonElement {
  const button = el("button", "tile");
  const img = el("img");
  img.src = "/" + assetPath;
  img.alt = label;
  button.appendChild(img);
  if (badge !== null) {
    button.appendChild(el("span", "badge", String(badge)));
    button.classList.add("selected");
  }
  button.addEventListener("click", onClick);
  return button;
}

function errorBanner(message: string | null): HTMLElement {
  const banner = el("div", "error-banner", message ?? "");
  if (!message) banner.hidden = true;
  return banner;
}

/** Registration: render the wizard's current step into `root`. */
export function renderRegistration(
  root: HTMLElement,
  wizard: RegistrationWizard,
  catalog: CatalogEntry[],
  rerender: () => void,
): void {
  root.replaceChildren();
  root.appendChild(errorBanner(wizard.error));

  if (wizard.step === "user-id") {
    const form = el("form", "stack");
    const userInput = el("input");
    userInput.placeholder = "user id";
    const confirmInput = el("input");
    confirmInput.placeholder = "confirm user id";
    const submit = el("button", "primary", "Create account");
    form.append(userInput, confirmInput, submit);
    form.addEventListener("submit", async (event) => {
      event.preventDefault();
      await wizard.submitUserId(userInput.value, confirmInput.value);
      rerender();
    });
    root.appendChild(form);
    return;
  }

  if (wizard.step === "image-pick") {
    root.appendChild(
      el("p", "hint", "Pick your two password images in order (badges show the order)."),
    );
    const gridBox = el("div", "grid");
    for (const entry of catalog) {
      gridBox.appendChild(
        tileButton(entry.asset_path, entry.label, wizard.badgeFor(entry.id), () => {
          wizard.toggleImage(entry.id);
          rerender();
        }),
      );
    }
    root.appendChild(gridBox);
    const controls = el("div", "controls");
    const reset = el("button", "", "Reset");
    reset.addEventListener("click", () => {
      wizard.resetSelection();
      rerender();
    });
    const confirm = el("button", "primary", "Confirm");
    confirm.disabled = !wizard.canConfirmImages;
    confirm.addEventListener("click", async () => {
      await wizard.confirmImages();
      rerender();
    });
    controls.append(reset, confirm);
    root.appendChild(controls);
    return;
  }

  if (wizard.step === "condition-pick") {
    root.appendChild(el("p", "hint", "Choose your shift condition."));
    const form = el("form", "stack");
    const directionSelect = el("select");
    for (const value of ["up", "down", "left", "right"]) {
      const option = el("option", "", value);
      option.value = value;
      directionSelect.appendChild(option);
    }
    directionSelect.value = wizard.direction;
    const unitSelect = el("select");
    const unitLabels: Record<string, string> = {
      h1: "h1 (hour tens)",
      h2: "h2 (hour ones)",
      m1: "m1 (minute tens)",
      m2: "m2 (minute ones)",
    };
    for (const [value, label] of Object.entries(unitLabels)) {
      const option = el("option", "", label);
      option.value = value;
      unitSelect.appendChild(option);
    }
    unitSelect.value = wizard.timeUnit;
    const confirm = el("button", "primary", "Confirm");
    form.append(directionSelect, unitSelect, confirm);
    form.addEventListener("submit", async (event) => {
      event.preventDefault();
      wizard.setCondition(
        directionSelect.value as typeof wizard.direction,
        unitSelect.value as typeof wizard.timeUnit,
      );
      await wizard.confirmCondition();
      rerender();
    });
    root.appendChild(form);
    return;
  }

  root.appendChild(el("p", "success-banner", `Account ${wizard.userId} created. You can log in now.`));
}

/** Login: render the flow's current phase into `root`. */
export function renderLogin(
  root: HTMLElement,
  flow: LoginFlow,
  catalog: CatalogEntry[],
  rerender: () => void,
): void {
  root.replaceChildren();
  root.appendChild(errorBanner(flow.error));

  if (flow.needsRestart) {
    const again = el("button", "primary", "Restart login");
    again.addEventListener("click", () => {
      flow.restart();
      rerender();
    });
    root.appendChild(again);
    return;
  }

  if (flow.phase === "user-id") {
    const form = el("form", "stack");
    const userInput = el("input");
    userInput.placeholder = "user id";
    const submit = el("button", "primary", "Start login");
    form.append(userInput, submit);
    form.addEventListener("submit", async (event) => {
      event.preventDefault();
      await flow.start(userInput.value);
      rerender();
    });
    root.appendChild(form);
    return;
  }

  if (flow.phase === "challenge") {
    const status = el("div", "status-bar");
    // The server's clock snapshot for this grid - the digit source.
    status.appendChild(el("span", "clock", flow.clock));
    status.appendChild(
      el("span", "attempts", `${flow.attemptsRemaining} attempt(s) remaining`),
    );
    root.appendChild(status);

    const byId = new Map(catalog.map((entry) => [entry.id, entry]));
    const gridBox = el("div", "grid");
    for (const tile of tilesFor(flow.grid, byId, (cell) => flow.buffer.badgeFor(cell))) {
      gridBox.appendChild(
        tileButton(tile.assetPath, tile.label, tile.badge, () => {
          flow.clickCell(tile.cell);
          rerender();
        }),
      );
    }
    root.appendChild(gridBox);

    const controls = el("div", "controls");
    const reset = el("button", "", "Clear clicks");
    reset.addEventListener("click", () => {
      flow.clearClicks();
      rerender();
    });
    const submit = el("button", "primary", "Submit");
    submit.disabled = !flow.canSubmit;
    submit.addEventListener("click", async () => {
      await flow.submit();
      rerender();
    });
    controls.append(reset, submit);
    root.appendChild(controls);
    return;
  }

  if (flow.phase === "success") {
    root.appendChild(el("p", "success-banner", "Login successful."));
  } else {
    root.appendChild(
      el("p", "locked-banner", "Locked: three failed attempts. Access denied."),
    );
  }
  const again = el("button", "", "Back to login");
  again.addEventListener("click", () => {
    flow.restart();
    rerender();
  });
  root.appendChild(again);
}
