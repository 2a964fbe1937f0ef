import { ApiClient } from "./api.js";
import { renderLogin, renderRegistration } from "./dom.js";
import { LoginFlow } from "./login.js";
import { RegistrationWizard } from "./registration.js";
import type { CatalogEntry } from "./types.js";

async function boot(): Promise<void> {
  const api = new ApiClient();
  const registrationRoot = document.getElementById("registration-root");
  const loginRoot = document.getElementById("login-root");
  if (!registrationRoot || !loginRoot) throw new Error("page shell missing roots");

  let catalog: CatalogEntry[];
  try {
    catalog = await api.getCatalog();
  } catch {
    loginRoot.textContent = "Cannot reach the server.";
    return;
  }

  const wizard = new RegistrationWizard(api);
  const flow = new LoginFlow(api);

  const rerenderRegistration = () =>
    renderRegistration(registrationRoot, wizard, catalog, rerenderRegistration);
  const rerenderLogin = () => renderLogin(loginRoot, flow, catalog, rerenderLogin);

  for (const tab of document.querySelectorAll<HTMLButtonElement>("[data-tab]")) {
    tab.addEventListener("click", () => {
      for (const other of document.querySelectorAll<HTMLButtonElement>("[data-tab]")) {
        other.classList.toggle("active", other === tab);
      }
      const showLogin = tab.dataset.tab === "login";
      loginRoot.hidden = !showLogin;
      registrationRoot.hidden = showLogin;
    });
  }

  rerenderRegistration();
  rerenderLogin();
}

boot();
