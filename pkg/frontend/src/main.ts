// Browser bootstrap: wires the controller to the DOM. Everything interesting
// lives in the pure modules; this file only reads events and injects strings.

import { ApiClient } from "./api";
import { Controller } from "./controller";
import { formatYear } from "./state";
import {
  renderErrorBanner,
  renderNetworkSvg,
  renderPersonPanel,
  renderTopList,
} from "./render";

function $(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (el === null) throw new Error(`missing element #${id}`);
  return el;
}

async function boot(): Promise<void> {
  const api = new ApiClient("/api");
  const { editions } = await api.editions();
  if (editions.length === 0) {
    $("app").innerHTML = renderErrorBanner("no editions served");
    return;
  }
  const horizon = editions[0].horizon;

  const editionSel = $("edition") as HTMLSelectElement;
  const splitSel = $("split-edition") as HTMLSelectElement;
  for (const info of editions) {
    editionSel.add(new Option(info.edition, info.edition));
    splitSel.add(new Option(info.edition, info.edition));
  }
  splitSel.add(new Option("(none)", ""), 0);
  splitSel.value = "";

  const slider = $("year") as HTMLInputElement;
  slider.min = String(horizon[0]);
  slider.max = String(horizon[1]);

  const controller = new Controller(api, editions[0].edition, horizon, {
    onNetwork: (payload, state) => {
      $("network").innerHTML = renderNetworkSvg(payload, state.layoutSeed);
    },
    onPerson: (payload) => {
      $("person").innerHTML = renderPersonPanel(payload);
    },
    onTopLists: (lists) => {
      $("top-lists").innerHTML = lists
        .map((l) => renderTopList(l.edition, l.entries))
        .join("");
    },
    onError: (err) => {
      $("banner").innerHTML = renderErrorBanner(String(err));
    },
  });

  const sync = () => {
    slider.value = String(controller.state.year);
    $("year-label").textContent = formatYear(controller.state.year);
    editionSel.value = controller.state.edition;
  };

  slider.addEventListener("input", () => {
    controller.dispatch({ kind: "setYear", year: Number(slider.value) });
    sync();
  });
  editionSel.addEventListener("change", () => {
    controller.dispatch({ kind: "setEdition", edition: editionSel.value });
    sync();
  });
  splitSel.addEventListener("change", () => {
    controller.dispatch({
      kind: "setSplitEdition",
      edition: splitSel.value === "" ? null : splitSel.value,
    });
  });
  $("network").addEventListener("click", (ev) => {
    const node = (ev.target as Element).closest("[data-id]");
    if (node !== null) {
      controller.dispatch({
        kind: "selectPerson",
        id: Number(node.getAttribute("data-id")),
      });
    }
  });
  $("person").addEventListener("click", (ev) => {
    const btn = (ev.target as Element).closest("[data-jump]");
    if (btn !== null) {
      controller.dispatch({
        kind: "jumpToYear",
        year: Number(btn.getAttribute("data-jump")),
      });
      sync();
    }
  });
  document.addEventListener("keydown", (ev) => {
    if (ev.key === "ArrowLeft" || ev.key === "ArrowRight") {
      controller.dispatch({
        kind: "stepYear",
        delta: ev.key === "ArrowRight" ? 1 : -1,
      });
      sync();
    }
  });

  sync();
  await controller.start();
}

boot().catch((err) => {
  document.body.innerHTML = renderErrorBanner(String(err));
});
